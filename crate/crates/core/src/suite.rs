//! Per-graph inequality checks between the four numbers and across `k`.
//!
//! Each check is one record `lhs <= rhs` (or `lhs < rhs` for the strict
//! doubling check), together with the witness it was computed from.

use serde::Serialize;

use crate::graph::{is_spanning_subgraph, Graph};
use crate::solvers::{auto_method, solve_with, Budget, SolveError, SolveResult};
use crate::transforms::{lift_roman, lift_strong, normalize_strong, roman_lift_threshold, TransformError};
use crate::weights::{is_low, is_valid, strong_neighbor_witnesses, uniform_upper_bound, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub graph_id: String,
    pub k: u32,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub records: Vec<CheckRecord>,
    /// Set when some solve ran out of budget; checks needing that value were
    /// skipped.
    pub partial: bool,
    pub skipped: Vec<String>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.holds)
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.records.extend(other.records);
        self.partial |= other.partial;
        self.skipped.extend(other.skipped);
    }

    fn push(&mut self, check: &str, graph_id: &str, k: u32, lhs: u64, rhs: u64, witness: Option<&[u32]>) {
        self.push_with(check, graph_id, k, lhs, rhs, lhs <= rhs, witness);
    }

    #[allow(clippy::too_many_arguments)]
    fn push_with(&mut self, check: &str, graph_id: &str, k: u32, lhs: u64, rhs: u64, holds: bool, witness: Option<&[u32]>) {
        self.records.push(CheckRecord {
            check: check.into(),
            graph_id: graph_id.into(),
            k,
            lhs,
            rhs,
            holds,
            witness: witness.map(<[u32]>::to_vec),
        });
    }
}

/// Check name, left side, right side, witness.
type Chain<'a> = (&'static str, Option<u64>, Option<u64>, Option<&'a [u32]>);

/// Exact values of all four variants at one `k`; `None` where the budget ran out.
struct Level {
    results: [Option<SolveResult>; 4],
}

impl Level {
    fn get(&self, v: Variant) -> Option<&SolveResult> {
        self.results[Variant::ALL.iter().position(|&x| x == v).unwrap()].as_ref()
    }
}

fn solve_level(g: &Graph, k: u32, budget: Budget, graph_id: &str, report: &mut SuiteReport) -> Result<Level, SolveError> {
    let method = auto_method(g, k);
    let mut results: [Option<SolveResult>; 4] = Default::default();
    for (slot, v) in results.iter_mut().zip(Variant::ALL) {
        match solve_with(g, k, v, method, budget) {
            Ok(r) if r.exact => *slot = Some(r),
            Ok(_) | Err(SolveError::BudgetExceeded { .. }) => {
                report.partial = true;
                report.skipped.push(format!("{graph_id}: {v} at k = {k}"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Level { results })
}

fn transform_failure(e: TransformError) -> SolveError {
    SolveError::OutOfRange(format!("transform rejected a solver witness: {e}"))
}

/// Runs every check for `k = 1..=k_max` on `g`. Cross-`k` checks use `k` and
/// `k + 1`, both within range.
pub fn check_inequality_suite(g: &Graph, graph_id: &str, k_max: u32, budget: Budget) -> Result<SuiteReport, SolveError> {
    let mut report = SuiteReport::default();
    let mut levels = Vec::new();
    for k in 1..=k_max {
        levels.push(solve_level(g, k, budget, graph_id, &mut report)?);
    }
    let t = g.component_count() as u64;
    let n = g.vertex_count() as u64;
    let isolated = g.isolated_count() as u64;

    for (idx, level) in levels.iter().enumerate() {
        let k = idx as u32 + 1;
        let upper = uniform_upper_bound(g, k);
        let value = |v| level.get(v).map(|r| r.value);
        let wit = |v| level.get(v).map(|r| r.witness.values());
        let chains: [Chain; 6] = [
            ("t*k <= roman", Some(t * k as u64), value(Variant::Roman), wit(Variant::Roman)),
            ("roman <= perfect", value(Variant::Roman), value(Variant::Perfect), wit(Variant::Perfect)),
            ("perfect <= uniform", value(Variant::Perfect), Some(upper), wit(Variant::Perfect)),
            ("roman <= strong", value(Variant::Roman), value(Variant::Strong), wit(Variant::Strong)),
            ("strong <= perfect-strong", value(Variant::Strong), value(Variant::PerfectStrong), wit(Variant::PerfectStrong)),
            ("perfect-strong <= uniform", value(Variant::PerfectStrong), Some(upper), wit(Variant::PerfectStrong)),
        ];
        for (name, lhs, rhs, w) in chains {
            if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                report.push(name, graph_id, k, lhs, rhs, w);
            }
        }

        if let Some(ps) = level.get(Variant::PerfectStrong) {
            let f = &ps.witness;
            let most = g
                .vertices()
                .filter(|&u| !g.is_isolated(u) && is_low(f.get(u), k))
                .map(|u| strong_neighbor_witnesses(g, f, u).map(|w| w.len() as u64))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| SolveError::OutOfRange(e.to_string()))?;
            let all_one = most.iter().all(|&c| c == 1);
            let lhs = most.iter().copied().max().unwrap_or(1);
            report.push_with("perfect-strong: one strong neighbour per low vertex", graph_id, k, lhs, 1, all_one, Some(f.values()));
        }

        let Some(next) = levels.get(idx + 1) else {
            continue;
        };

        if let (Some(s), Some(s1)) = (level.get(Variant::Strong), next.get(Variant::Strong)) {
            let f = normalize_strong(g, &s.witness).map_err(transform_failure)?;
            let zeros = f.count_where(|x| x == 0) as u64;
            let mid = s.value + n - zeros;
            report.push("strong(k+1) <= strong(k) + |V| - |V_0|", graph_id, k, s1.value, mid, Some(f.values()));
            report.push("strong(k) + |V| - |V_0| <= 2 strong(k)", graph_id, k, mid, 2 * s.value, Some(f.values()));
            let lifted = lift_strong(g, &f).map_err(transform_failure)?;
            let ok = is_valid(g, &lifted, Variant::Strong) && lifted.weight() == mid;
            report.push_with("strong lift is valid with weight strong(k) + |V| - |V_0|", graph_id, k, lifted.weight(), mid, ok, Some(lifted.values()));
            if k >= 3 {
                report.push_with("strong(k+1) < 2 strong(k)", graph_id, k, s1.value, 2 * s.value, s1.value < 2 * s.value, Some(s1.witness.values()));
            }
        }

        if let (Some(r), Some(r1)) = (level.get(Variant::Roman), next.get(Variant::Roman)) {
            let f = &r.witness;
            let raised = f.count_where(|x| x <= roman_lift_threshold(k)) as u64;
            let mid = r.value + raised + isolated;
            let zeros = f.count_where(|x| x == 0) as u64;
            report.push("roman(k+1) <= roman(k) + |V_0..V_r| + isolated", graph_id, k, r1.value, mid, Some(f.values()));
            report.push("roman(k) + |V_0..V_r| + isolated <= 2 roman(k) + |V_0|", graph_id, k, mid, 2 * r.value + zeros, Some(f.values()));
            let lifted = lift_roman(g, f).map_err(transform_failure)?;
            let ok = is_valid(g, &lifted, Variant::Roman) && lifted.weight() == mid;
            report.push_with("roman lift is valid with the stated weight", graph_id, k, lifted.weight(), mid, ok, Some(lifted.values()));
        }
    }
    Ok(report)
}

/// `value(G) <= value(H)` for the Roman and strong variants when `H` is a
/// spanning subgraph of `G`.
pub fn check_spanning(h: &Graph, g: &Graph, pair_id: &str, k: u32, budget: Budget) -> Result<SuiteReport, SolveError> {
    if !is_spanning_subgraph(h, g) {
        return Err(SolveError::OutOfRange(format!("{pair_id}: first graph is not a spanning subgraph of the second")));
    }
    let mut report = SuiteReport::default();
    for v in [Variant::Roman, Variant::Strong] {
        let rg = solve_with(g, k, v, auto_method(g, k), budget)?;
        let rh = solve_with(h, k, v, auto_method(h, k), budget)?;
        if !(rg.exact && rh.exact) {
            report.partial = true;
            report.skipped.push(format!("{pair_id}: {v} at k = {k}"));
            continue;
        }
        report.push(&format!("{v}: supergraph <= spanning subgraph"), pair_id, k, rg.value, rh.value, Some(rg.witness.values()));
    }
    Ok(report)
}
