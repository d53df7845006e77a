//! Exhaustive enumeration of all `(k+1)^|V|` functions.

use std::time::Instant;

use super::{Method, SolveError, SolveResult};
use crate::graph::Graph;
use crate::weights::{satisfies, Variant, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_assignments: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_vertices: 10,
            max_assignments: 100_000_000,
        }
    }
}

impl OracleBudget {
    /// Instances small enough that enumeration beats search setup.
    pub fn tiny() -> Self {
        Self {
            max_vertices: 8,
            max_assignments: 100_000,
        }
    }

    fn assignments(n: usize, k: u32) -> Option<u64> {
        (k as u64 + 1).checked_pow(n as u32)
    }

    pub fn admits(&self, n: usize, k: u32) -> bool {
        n <= self.max_vertices
            && Self::assignments(n, k).is_some_and(|c| c <= self.max_assignments)
    }
}

/// Minimum-weight valid function by brute force. Functions are visited in
/// lexicographic order and the incumbent only moves on strict improvement, so
/// the witness is the lexicographically smallest optimum.
pub fn solve_oracle(
    g: &Graph,
    k: u32,
    variant: Variant,
    budget: OracleBudget,
) -> Result<SolveResult, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroK);
    }
    let n = g.vertex_count();
    if !budget.admits(n, k) {
        return Err(SolveError::BudgetExceeded {
            budget: format!(
                "oracle (|V| <= {}, (k+1)^|V| <= {})",
                budget.max_vertices, budget.max_assignments
            ),
        });
    }
    let start = Instant::now();
    let mut values = vec![0u32; n];
    let mut weight = 0u64;
    let mut best: Option<(u64, Vec<u32>)> = None;
    let mut visited = 0u64;
    loop {
        visited += 1;
        if best.as_ref().is_none_or(|(w, _)| weight < *w) && satisfies(g, &values, k, variant) {
            best = Some((weight, values.clone()));
        }
        // odometer step; the last position moves fastest
        let mut i = n;
        loop {
            if i == 0 {
                let (value, witness) = best.expect("uniform function is always valid");
                return Ok(SolveResult {
                    variant,
                    value,
                    witness: WeightFunction::new(witness, k).expect("values within 0..=k"),
                    method: Method::Oracle,
                    nodes_explored: visited,
                    elapsed: start.elapsed(),
                    exact: true,
                    lower_bound: value,
                });
            }
            i -= 1;
            if values[i] < k {
                values[i] += 1;
                weight += 1;
                break;
            }
            weight -= k as u64;
            values[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, disjoint_union, path};

    fn value(g: &Graph, k: u32, v: Variant) -> u64 {
        solve_oracle(g, k, v, OracleBudget::default()).unwrap().value
    }

    #[test]
    fn single_vertex_carries_k() {
        for v in Variant::ALL {
            let r = solve_oracle(&complete(1), 5, v, OracleBudget::default()).unwrap();
            assert_eq!(r.value, 5);
            assert_eq!(r.witness.values(), &[5]);
            assert_eq!(r.nodes_explored, 6);
        }
    }

    #[test]
    fn path4_double_roman() {
        assert_eq!(value(&path(4), 3, Variant::Strong), 5);
    }

    #[test]
    fn k22_roman_k2() {
        let (g, _) = complete_bipartite(2, 2).unwrap();
        let r = solve_oracle(&g, 2, Variant::Strong, OracleBudget::default()).unwrap();
        assert_eq!(r.value, 3);
        // smallest vector of weight 3 puts the (1, 2) pair on side B
        assert_eq!(r.witness.values(), &[0, 0, 1, 2]);
    }

    #[test]
    fn components_each_need_k() {
        let g = disjoint_union(&[complete(3), complete(3)]);
        assert_eq!(value(&g, 4, Variant::Roman), 8);
    }

    #[test]
    fn empty_graph_has_value_zero() {
        let g = Graph::from_edges(0, []).unwrap();
        let r = solve_oracle(&g, 3, Variant::Roman, OracleBudget::default()).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.witness.is_empty());
    }

    #[test]
    fn budget_is_enforced() {
        let err = solve_oracle(&path(11), 1, Variant::Roman, OracleBudget::default()).unwrap_err();
        assert!(matches!(err, SolveError::BudgetExceeded { .. }));
        let err = solve_oracle(&path(10), 9, Variant::Roman, OracleBudget::default()).unwrap_err();
        assert!(err.to_string().contains("oracle"));
        assert_eq!(
            solve_oracle(&path(2), 0, Variant::Roman, OracleBudget::default()),
            Err(SolveError::ZeroK)
        );
    }
}
