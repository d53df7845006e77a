//! Solver for `K_{m,n}` that enumerates value multisets per side.
//!
//! On `K_{m,n}` a vertex of side A sees `{u} ∪ B`, so validity depends only
//! on its own value and on aggregates of the opposite side. Side A is
//! enumerated as a nondecreasing vector; each choice fixes which values side B
//! may use and what total side B must supply, after which B is enumerated the
//! same way. The traversal order is lexicographic on `sorted(A) ++ sorted(B)`,
//! and the incumbent only moves on strict improvement, so the witness is the
//! lexicographically smallest optimum under the labelling of
//! [`crate::generators::complete_bipartite`].

use super::{Budget, Meter, Method, SolveError, SolveResult};
use crate::weights::{half_up, is_low, is_strong, Variant, WeightFunction};

pub const MAX_KMN_PART: usize = 200;
pub const MAX_KMN_K: u32 = 200;

#[derive(Clone, Copy)]
enum Demand {
    None,
    AtLeast(u64),
    Exactly(u64),
}

struct Search<'a> {
    m: usize,
    n: usize,
    k: u32,
    variant: Variant,
    meter: &'a Meter,
    nodes: u64,
    aborted: bool,
    a: Vec<u32>,
    b: Vec<u32>,
    best: u64,
    found: Option<Vec<u32>>,
}

impl Search<'_> {
    /// Whether a function of weight `w` would still be recorded.
    fn admits(&self, w: u64) -> bool {
        if self.found.is_some() {
            w < self.best
        } else {
            w <= self.best
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.meter.exhausted(self.nodes) {
            self.aborted = true;
        }
        self.aborted
    }

    /// Contribution of one vertex value to a neighbour's covering sum.
    fn contribution(&self, x: u32) -> u64 {
        if !self.variant.is_strong() || is_strong(x, self.k) {
            x as u64
        } else {
            0
        }
    }

    fn search_a(&mut self, pos: usize, sum: u64, from: u32) {
        if self.tick() {
            return;
        }
        if pos == self.m {
            self.enter_b(sum);
            return;
        }
        let left = (self.m - pos) as u64;
        for x in from..=self.k {
            let base = sum + x as u64 * left;
            if !self.admits(base) {
                break;
            }
            // the smallest A value fixes the least B must carry
            let a0 = if pos == 0 { x } else { self.a[0] };
            let owed = if is_low(a0, self.k) { (self.k - a0) as u64 } else { 0 };
            if !self.admits(base + owed) {
                continue;
            }
            self.a[pos] = x;
            self.search_a(pos + 1, sum + x as u64, x);
            if self.aborted {
                return;
            }
        }
    }

    fn enter_b(&mut self, sum_a: u64) {
        let k = self.k as u64;
        let cover_a: u64 = self.a.iter().map(|&x| self.contribution(x)).sum();
        let perfect = self.variant.is_perfect();
        let domain: Vec<u32> = (0..=self.k)
            .filter(|&y| {
                !is_low(y, self.k) || if perfect { y as u64 + cover_a == k } else { y as u64 + cover_a >= k }
            })
            .collect();
        let mut demand = Demand::None;
        for &x in &self.a {
            if !is_low(x, self.k) {
                continue;
            }
            let owed = k - x as u64;
            demand = match demand {
                Demand::None if perfect => Demand::Exactly(owed),
                Demand::None => Demand::AtLeast(owed),
                Demand::AtLeast(t) => Demand::AtLeast(t.max(owed)),
                Demand::Exactly(t) if t == owed => demand,
                Demand::Exactly(_) => return,
            };
        }
        self.search_b(0, sum_a, 0, 0, &domain, demand);
    }

    fn search_b(&mut self, pos: usize, sum_a: u64, sum: u64, cover: u64, domain: &[u32], demand: Demand) {
        if self.tick() {
            return;
        }
        if pos == self.n {
            let met = match demand {
                Demand::None => true,
                Demand::AtLeast(t) => cover >= t,
                Demand::Exactly(t) => cover == t,
            };
            let w = sum_a + sum;
            if met && self.admits(w) {
                self.best = w;
                self.found = Some(self.a.iter().chain(&self.b).copied().collect());
            }
            return;
        }
        let left = (self.n - pos) as u64;
        for (idx, &y) in domain.iter().enumerate() {
            if !self.admits(sum_a + sum + y as u64 * left) {
                break;
            }
            let c = self.contribution(y);
            if let Demand::Exactly(t) = demand {
                if cover + c * left > t {
                    break;
                }
            }
            self.b[pos] = y;
            self.search_b(pos + 1, sum_a, sum + y as u64, cover + c, &domain[idx..], demand);
            if self.aborted {
                return;
            }
        }
    }
}

/// Exact optimum on `K_{m,n}` with side A labelled `0..m` and side B
/// `m..m+n`.
pub fn solve_kmn_multiset(
    m: usize,
    n: usize,
    k: u32,
    variant: Variant,
    budget: Budget,
) -> Result<SolveResult, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroK);
    }
    if m == 0 || n == 0 {
        return Err(SolveError::OutOfRange("both sides of K_{m,n} need a vertex".into()));
    }
    if m > MAX_KMN_PART || n > MAX_KMN_PART || k > MAX_KMN_K {
        return Err(SolveError::OutOfRange(format!(
            "multiset solver handles m, n <= {MAX_KMN_PART} and k <= {MAX_KMN_K}"
        )));
    }
    let meter = Meter::new(budget);
    let uniform = (m + n) as u64 * half_up(k) as u64;
    let two_hubs = 2 * k as u64;
    let mut s = Search {
        m,
        n,
        k,
        variant,
        meter: &meter,
        nodes: 0,
        aborted: false,
        a: vec![0; m],
        b: vec![0; n],
        best: uniform.min(two_hubs),
        found: None,
    };
    s.search_a(0, 0, 0);

    let witness = s.found.take().unwrap_or_else(|| {
        if uniform <= two_hubs {
            vec![half_up(k); m + n]
        } else {
            let mut v = vec![0; m + n];
            v[0] = k;
            v[m] = k;
            v
        }
    });
    let exact = !s.aborted;
    Ok(SolveResult {
        variant,
        value: s.best,
        witness: WeightFunction::new(witness, k).expect("values within 0..=k"),
        method: Method::Multiset,
        nodes_explored: s.nodes,
        elapsed: meter.elapsed(),
        exact,
        // a connected graph needs at least k
        lower_bound: if exact { s.best } else { (k as u64).min(s.best) },
    })
}
