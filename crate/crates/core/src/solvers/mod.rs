//! Exact computation of the four domination numbers.
//!
//! * [`oracle`] enumerates every function; it is the reference the other
//!   solvers are tested against.
//! * [`bnb`] is a pruned depth-first search over vertex values.
//! * [`multiset`] exploits side symmetry of `K_{m,n}`.
//! * [`ilp`] emits an LP-format model for external MILP solvers.
//!
//! Every solver returns the lexicographically smallest optimal value vector
//! as its witness, so results agree bit for bit across methods.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::graph::Graph;
use crate::weights::{Variant, WeightFunction};

pub mod bnb;
pub mod ilp;
pub mod multiset;
pub mod oracle;

pub use bnb::{solve_bnb, BnbOptions};
pub use ilp::export_ilp;
pub use multiset::{solve_kmn_multiset, MAX_KMN_K, MAX_KMN_PART};
pub use oracle::{solve_oracle, OracleBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Bnb,
    Multiset,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Bnb => "bnb",
            Method::Multiset => "multiset",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k must be positive")]
    ZeroK,
    #[error("instance exceeds the {budget} budget")]
    BudgetExceeded { budget: String },
    #[error("{0}")]
    OutOfRange(String),
}

/// Node and wall-clock limits for the searching solvers. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

/// Tracks budget consumption; the clock is only sampled every 1024 nodes.
#[derive(Debug)]
pub(crate) struct Meter {
    budget: Budget,
    start: Instant,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Self {
            budget,
            start: Instant::now(),
        }
    }

    pub(crate) fn exhausted(&self, nodes: u64) -> bool {
        if self.budget.max_nodes.is_some_and(|max| nodes > max) {
            return true;
        }
        match self.budget.max_time {
            Some(limit) if nodes & 1023 == 0 => self.start.elapsed() > limit,
            _ => false,
        }
    }

    /// How many nodes a worker may count locally before reporting.
    pub(crate) fn batch(&self) -> u64 {
        match self.budget.max_nodes {
            Some(max) => (max / 8).clamp(1, 1024),
            None => 1024,
        }
    }

    /// Like [`Meter::exhausted`] but always samples the clock.
    pub(crate) fn exhausted_now(&self, nodes: u64) -> bool {
        self.budget.max_nodes.is_some_and(|max| nodes > max)
            || self.budget.max_time.is_some_and(|limit| self.start.elapsed() > limit)
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub variant: Variant,
    /// Optimal weight when `exact`, otherwise the best upper bound found.
    pub value: u64,
    pub witness: WeightFunction,
    pub method: Method,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// False when a budget cut the search short.
    pub exact: bool,
    /// Proven lower bound; equals `value` when `exact`.
    pub lower_bound: u64,
}

impl SolveResult {
    pub fn k(&self) -> u32 {
        self.witness.k()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut out = json!({
            "variant": self.variant.name(),
            "k": self.k(),
            "value": self.value,
            "witness": self.witness.values(),
            "method": self.method.name(),
            "nodes": self.nodes_explored,
            "elapsed_ms": self.elapsed.as_millis() as u64,
            "exact": self.exact,
        });
        if !self.exact {
            out["lower_bound"] = json!(self.lower_bound);
        }
        out
    }
}

/// Picks a method for `g`: the multiset solver for canonically labelled
/// `K_{m,n}`, the oracle for tiny instances, branch and bound otherwise.
pub fn auto_method(g: &Graph, k: u32) -> Method {
    if let Some((m, n)) = g.complete_bipartite_parts() {
        if m <= MAX_KMN_PART && n <= MAX_KMN_PART && k <= MAX_KMN_K {
            return Method::Multiset;
        }
    }
    if OracleBudget::tiny().admits(g.vertex_count(), k) {
        Method::Oracle
    } else {
        Method::Bnb
    }
}

/// Dispatches to the requested solver. The multiset method requires a
/// canonically labelled complete bipartite graph.
pub fn solve_with(
    g: &Graph,
    k: u32,
    variant: Variant,
    method: Method,
    budget: Budget,
) -> Result<SolveResult, SolveError> {
    match method {
        Method::Oracle => solve_oracle(g, k, variant, OracleBudget::default()),
        Method::Bnb => solve_bnb(
            g,
            k,
            variant,
            BnbOptions {
                budget,
                ..BnbOptions::default()
            },
        ),
        Method::Multiset => {
            let (m, n) = g.complete_bipartite_parts().ok_or_else(|| {
                SolveError::OutOfRange(
                    "multiset method needs K_{m,n} labelled side A first".into(),
                )
            })?;
            solve_kmn_multiset(m, n, k, variant, budget)
        }
    }
}
