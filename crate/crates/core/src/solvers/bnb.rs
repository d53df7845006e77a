//! Depth-first branch and bound over vertex values.
//!
//! The search runs in two phases:
//!
//! 1. **Value.** Vertices are assigned in descending-degree order (ties by
//!    index), values ascending, starting from the uniform `⌈k/2⌉` incumbent.
//!    For the strong variants candidate values are restricted to
//!    `{0} ∪ {x : 2x >= k}`: any strong function can be rewritten without
//!    intermediate values at no extra weight (see
//!    [`crate::transforms::normalize_strong`]). Top-level subtrees may run on
//!    the rayon pool; the incumbent is a shared atomic minimum.
//! 2. **Witness.** With the optimum `W` known, a second search in plain index
//!    order over the full value range stops at the first valid function of
//!    weight `W`, which is the lexicographically smallest optimum.
//!
//! Pruning: a node is cut when its weight plus a coverage lower bound cannot
//! beat the incumbent, or as soon as some assigned low vertex can no longer
//! meet its demand (closed neighborhood complete and short, or a perfect
//! demand already exceeded).

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{Budget, Meter, Method, SolveError, SolveResult};
use crate::graph::{Graph, Vertex};
use crate::weights::{half_up, is_low, is_strong, uniform_upper_bound_function, Variant, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BnbOptions {
    pub budget: Budget,
    /// Split the top of the search tree across the rayon pool.
    pub parallel: bool,
    /// Apply the gap-free value restriction to the perfect strong variant as
    /// well as the strong one. The normal form is only proven for the strong
    /// variant; oracle cross-checks have not found a counterexample.
    pub gap_free_perfect_strong: bool,
}

impl Default for BnbOptions {
    fn default() -> Self {
        Self {
            budget: Budget::unlimited(),
            parallel: false,
            gap_free_perfect_strong: true,
        }
    }
}

struct Model<'a> {
    g: &'a Graph,
    k: u32,
    variant: Variant,
    /// Every closed neighborhood must eventually carry at least this much.
    need: u64,
}

#[derive(Clone)]
struct State {
    values: Vec<u32>,
    assigned: Vec<bool>,
    closed_sum: Vec<u64>,
    strong_sum: Vec<u64>,
    /// Unassigned vertices in N[u].
    open: Vec<u32>,
    deficit: u64,
    partial: u64,
}

impl State {
    fn new(m: &Model) -> Self {
        let n = m.g.vertex_count();
        Self {
            values: vec![0; n],
            assigned: vec![false; n],
            closed_sum: vec![0; n],
            strong_sum: vec![0; n],
            open: m.g.vertices().map(|u| m.g.degree(u) as u32 + 1).collect(),
            deficit: m.need * n as u64,
            partial: 0,
        }
    }

    fn bump(&mut self, m: &Model, w: Vertex, x: u64, add: bool) {
        let old = self.closed_sum[w];
        let new = if add { old + x } else { old - x };
        let (lo, hi) = if add { (old, new) } else { (new, old) };
        let covered = hi.min(m.need) - lo.min(m.need);
        if add {
            self.deficit -= covered;
            self.open[w] -= 1;
        } else {
            self.deficit += covered;
            self.open[w] += 1;
        }
        self.closed_sum[w] = new;
    }

    /// Assigns `x` to `v` and reports whether every constraint touched is
    /// still satisfiable. The update is applied even when it is not.
    fn assign(&mut self, m: &Model, v: Vertex, x: u32) -> bool {
        self.values[v] = x;
        self.assigned[v] = true;
        self.partial += x as u64;
        let strong = is_strong(x, m.k);
        self.bump(m, v, x as u64, true);
        for &w in m.g.neighbors(v) {
            self.bump(m, w, x as u64, true);
            if strong {
                self.strong_sum[w] += x as u64;
            }
        }
        self.feasible(m, v) && m.g.neighbors(v).iter().all(|&w| !self.assigned[w] || self.feasible(m, w))
    }

    fn unassign(&mut self, m: &Model, v: Vertex) {
        let x = self.values[v];
        let strong = is_strong(x, m.k);
        self.bump(m, v, x as u64, false);
        for &w in m.g.neighbors(v) {
            self.bump(m, w, x as u64, false);
            if strong {
                self.strong_sum[w] -= x as u64;
            }
        }
        self.partial -= x as u64;
        self.assigned[v] = false;
        self.values[v] = 0;
    }

    fn feasible(&self, m: &Model, w: Vertex) -> bool {
        let x = self.values[w];
        if m.g.is_isolated(w) {
            return x == m.k;
        }
        if !is_low(x, m.k) {
            return true;
        }
        let sum = if m.variant.is_strong() {
            x as u64 + self.strong_sum[w]
        } else {
            self.closed_sum[w]
        };
        let k = m.k as u64;
        !(m.variant.is_perfect() && sum > k || self.open[w] == 0 && sum < k)
    }
}

enum Goal<'a> {
    Minimize(&'a AtomicU64),
    Target(u64),
}

struct Shared<'a> {
    meter: &'a Meter,
    nodes: &'a AtomicU64,
    abort: &'a AtomicBool,
}

struct Searcher<'a> {
    model: &'a Model<'a>,
    order: &'a [Vertex],
    domains: &'a [Vec<u32>],
    /// `max(deg + 1)` over the unassigned suffix of `order`, per position.
    reach: &'a [u64],
    shared: &'a Shared<'a>,
    goal: Goal<'a>,
    state: State,
    pending_nodes: u64,
    found: Option<(u64, Vec<u32>)>,
}

impl Searcher<'_> {
    fn bound(&self, pos: usize) -> u64 {
        self.state.partial + self.state.deficit.div_ceil(self.reach[pos])
    }

    fn admissible(&self, bound: u64) -> bool {
        match self.goal {
            Goal::Minimize(best) => bound < best.load(Ordering::Relaxed),
            Goal::Target(w) => bound <= w,
        }
    }

    fn tick(&mut self) -> bool {
        self.pending_nodes += 1;
        if self.pending_nodes >= self.shared.meter.batch() {
            self.flush();
        }
        self.shared.abort.load(Ordering::Relaxed)
    }

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.pending_nodes, Ordering::Relaxed) + self.pending_nodes;
        self.pending_nodes = 0;
        if self.shared.meter.exhausted_now(total) {
            self.shared.abort.store(true, Ordering::Relaxed);
        }
    }

    /// Returns true when the whole search should stop.
    fn dfs(&mut self, pos: usize) -> bool {
        if self.tick() {
            return true;
        }
        if pos == self.order.len() {
            let w = self.state.partial;
            match self.goal {
                Goal::Minimize(best) => {
                    if best.fetch_min(w, Ordering::Relaxed) > w {
                        self.found = Some((w, self.state.values.clone()));
                    }
                    return false;
                }
                Goal::Target(_) => {
                    self.found = Some((w, self.state.values.clone()));
                    return true;
                }
            }
        }
        let v = self.order[pos];
        let base = self.state.partial;
        for &x in &self.domains[v] {
            if !self.admissible(base + x as u64) {
                break;
            }
            let ok = self.state.assign(self.model, v, x);
            if ok && self.admissible(self.bound(pos + 1)) && self.dfs(pos + 1) {
                self.state.unassign(self.model, v);
                return true;
            }
            self.state.unassign(self.model, v);
        }
        false
    }
}

fn reach_by_position(g: &Graph, order: &[Vertex]) -> Vec<u64> {
    let mut reach = vec![1u64; order.len() + 1];
    for pos in (0..order.len()).rev() {
        reach[pos] = reach[pos + 1].max(g.degree(order[pos]) as u64 + 1);
    }
    reach
}

fn domains(g: &Graph, k: u32, gap_free: bool) -> Vec<Vec<u32>> {
    g.vertices()
        .map(|u| {
            if g.is_isolated(u) {
                vec![k]
            } else if gap_free {
                std::iter::once(0).chain(half_up(k)..=k).collect()
            } else {
                (0..=k).collect()
            }
        })
        .collect()
}

/// Exact optimum by branch and bound. When the budget runs out the best
/// function found so far is returned with `exact == false` and a proven
/// `lower_bound`.
pub fn solve_bnb(g: &Graph, k: u32, variant: Variant, opts: BnbOptions) -> Result<SolveResult, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroK);
    }
    let meter = Meter::new(opts.budget);
    let model = Model {
        g,
        k,
        variant,
        need: half_up(k) as u64,
    };
    let n = g.vertex_count();
    let uniform = uniform_upper_bound_function(g, k);
    let upper = uniform.weight();

    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&u| std::cmp::Reverse(g.degree(u)));
    let reach = reach_by_position(g, &order);
    let gap_free = match variant {
        Variant::Strong => true,
        Variant::PerfectStrong => opts.gap_free_perfect_strong,
        Variant::Roman | Variant::Perfect => false,
    };
    let value_domains = domains(g, k, gap_free);

    let lower = {
        let root = State::new(&model);
        let components = g.component_count() as u64 * k as u64;
        components.max(root.deficit.div_ceil(reach[0]))
    };

    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let shared = Shared {
        meter: &meter,
        nodes: &nodes,
        abort: &abort,
    };
    let best = AtomicU64::new(upper);

    let searcher = |state: State, goal| Searcher {
        model: &model,
        order: &order,
        domains: &value_domains,
        reach: &reach,
        shared: &shared,
        goal,
        state,
        pending_nodes: 0,
        found: None,
    };

    // phase 1: optimal value
    let mut improved: Option<(u64, Vec<u32>)> = None;
    if lower < upper {
        let prefixes = if opts.parallel {
            split_prefixes(&model, &order, &value_domains, upper, rayon::current_num_threads() * 8)
        } else {
            vec![Vec::new()]
        };
        let results: Vec<Option<(u64, Vec<u32>)>> = prefixes
            .into_par_iter()
            .with_max_len(1)
            .map(|prefix| {
                let mut s = searcher(State::new(&model), Goal::Minimize(&best));
                let mut ok = true;
                for (pos, &x) in prefix.iter().enumerate() {
                    ok &= s.state.assign(&model, order[pos], x);
                }
                if ok && s.admissible(s.bound(prefix.len())) {
                    s.dfs(prefix.len());
                }
                s.flush();
                s.found
            })
            .collect();
        improved = results.into_iter().flatten().min_by_key(|(w, _)| *w);
    }

    let elapsed_result = |value: u64, witness: Vec<u32>, exact: bool, lower_bound: u64| SolveResult {
        variant,
        value,
        witness: WeightFunction::new(witness, k).expect("search values within 0..=k"),
        method: Method::Bnb,
        nodes_explored: nodes.load(Ordering::Relaxed),
        elapsed: meter.elapsed(),
        exact,
        lower_bound,
    };

    let (value, phase1_witness) = match improved {
        Some((w, values)) if w < upper => (w, values),
        _ => (upper, uniform.values().to_vec()),
    };
    if abort.load(Ordering::Relaxed) {
        return Ok(elapsed_result(value, phase1_witness, false, lower.min(value)));
    }

    // phase 2: lexicographically smallest witness of weight `value`
    let index_order: Vec<Vertex> = (0..n).collect();
    let index_reach = reach_by_position(g, &index_order);
    let full_domains = domains(g, k, false);
    let mut lex = Searcher {
        model: &model,
        order: &index_order,
        domains: &full_domains,
        reach: &index_reach,
        shared: &shared,
        goal: Goal::Target(value),
        state: State::new(&model),
        pending_nodes: 0,
        found: None,
    };
    lex.dfs(0);
    lex.flush();
    let witness = match lex.found.take() {
        Some((w, values)) => {
            debug_assert_eq!(w, value);
            values
        }
        // budget ran out before the lexicographic pass finished; the value is
        // still proven, only the tie-break is lost
        None => phase1_witness,
    };
    Ok(elapsed_result(value, witness, true, value))
}

/// Feasible assignments of the first few vertices in `order`, enough to keep
/// the pool busy.
fn split_prefixes(
    model: &Model,
    order: &[Vertex],
    domains: &[Vec<u32>],
    upper: u64,
    want: usize,
) -> Vec<Vec<u32>> {
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    let mut depth = 0;
    while frontier.len() < want && depth < order.len().min(4) {
        let v = order[depth];
        let mut next = Vec::new();
        for prefix in &frontier {
            for &x in &domains[v] {
                let mut state = State::new(model);
                let mut ok = true;
                for (pos, &y) in prefix.iter().enumerate() {
                    ok &= state.assign(model, order[pos], y);
                }
                ok &= state.assign(model, v, x);
                if ok && state.partial < upper {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    frontier
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, disjoint_union, empty, path};
    use crate::solvers::oracle::{solve_oracle, OracleBudget};
    use crate::weights::is_valid;

    fn bnb(g: &Graph, k: u32, v: Variant) -> SolveResult {
        solve_bnb(g, k, v, BnbOptions::default()).unwrap()
    }

    #[test]
    fn bipartite_examples() {
        let (k33, _) = complete_bipartite(3, 3).unwrap();
        assert_eq!(bnb(&k33, 4, Variant::Perfect).value, 6);
        let (k34, _) = complete_bipartite(3, 4).unwrap();
        assert_eq!(bnb(&k34, 5, Variant::Roman).value, 8);
    }

    #[test]
    fn matches_oracle_on_fixtures() {
        let (k22, _) = complete_bipartite(2, 2).unwrap();
        for (g, k, v, expect) in [
            (k22, 2, Variant::Strong, 3),
            (path(4), 3, Variant::Strong, 5),
        ] {
            let b = bnb(&g, k, v);
            let o = solve_oracle(&g, k, v, OracleBudget::default()).unwrap();
            assert_eq!(b.value, expect);
            assert_eq!(b.witness, o.witness);
            assert!(b.exact);
        }
    }

    #[test]
    fn witnesses_validate() {
        let g = disjoint_union(&[path(4), complete(1), complete(3)]);
        for k in 1..=4 {
            for v in Variant::ALL {
                let r = bnb(&g, k, v);
                assert!(is_valid(&g, &r.witness, v));
                assert_eq!(r.witness.weight(), r.value);
            }
        }
    }

    #[test]
    fn parallel_search_is_deterministic() {
        let (g, _) = complete_bipartite(3, 5).unwrap();
        let seq = bnb(&g, 5, Variant::Roman);
        for _ in 0..3 {
            let par = solve_bnb(
                &g,
                5,
                Variant::Roman,
                BnbOptions {
                    parallel: true,
                    ..BnbOptions::default()
                },
            )
            .unwrap();
            assert_eq!(par.value, 9);
            assert_eq!(par.witness, seq.witness);
        }
    }

    #[test]
    fn trivial_graphs() {
        assert_eq!(bnb(&empty(0), 3, Variant::Roman).value, 0);
        assert_eq!(bnb(&empty(3), 2, Variant::PerfectStrong).value, 6);
        assert_eq!(bnb(&complete(5), 4, Variant::Perfect).value, 4);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = path(14);
        let r = solve_bnb(
            &g,
            4,
            Variant::Perfect,
            BnbOptions {
                budget: Budget::nodes(50),
                ..BnbOptions::default()
            },
        )
        .unwrap();
        assert!(!r.exact);
        assert!(r.lower_bound <= r.value);
        assert!(is_valid(&g, &r.witness, Variant::Perfect));
        assert_eq!(r.to_json()["exact"], false);
        assert!(r.to_json().get("lower_bound").is_some());
    }
}
