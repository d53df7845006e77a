//! Weight functions `f: V -> {0..k}` and the four dominating-function predicates.
//!
//! All half-integer thresholds are compared in doubled form: a value `x` is
//! *low* when `2x < k` and *strong* when `2x > k`. For even `k` the value
//! `k/2` is neither.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("k must be positive")]
    ZeroK,
    #[error("value {value} at vertex {vertex} exceeds k = {k}")]
    ValueAboveK { vertex: Vertex, value: u32, k: u32 },
    #[error("function has {function} values but the graph has {graph} vertices")]
    SizeMismatch { function: usize, graph: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightFunction {
    values: Vec<u32>,
    k: u32,
}

impl WeightFunction {
    pub fn new(values: Vec<u32>, k: u32) -> Result<Self, WeightError> {
        if k == 0 {
            return Err(WeightError::ZeroK);
        }
        if let Some((vertex, &value)) = values.iter().enumerate().find(|(_, &v)| v > k) {
            return Err(WeightError::ValueAboveK { vertex, value, k });
        }
        Ok(Self { values, k })
    }

    pub fn constant(len: usize, value: u32, k: u32) -> Result<Self, WeightError> {
        Self::new(vec![value; len], k)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.values[v]
    }

    pub fn weight(&self) -> u64 {
        self.values.iter().map(|&v| v as u64).sum()
    }

    /// The partition `(V_0, ..., V_k)`.
    pub fn level_sets(&self) -> Vec<Vec<Vertex>> {
        let mut levels = vec![Vec::new(); self.k as usize + 1];
        for (v, &x) in self.values.iter().enumerate() {
            levels[x as usize].push(v);
        }
        levels
    }

    pub fn count_where(&self, pred: impl Fn(u32) -> bool) -> usize {
        self.values.iter().filter(|&&x| pred(x)).count()
    }

    /// No value strictly between 0 and k/2.
    pub fn is_gap_free(&self) -> bool {
        self.values.iter().all(|&x| x == 0 || !is_low(x, self.k))
    }
}

#[inline]
pub fn is_low(value: u32, k: u32) -> bool {
    2 * (value as u64) < k as u64
}

#[inline]
pub fn is_strong(value: u32, k: u32) -> bool {
    2 * (value as u64) > k as u64
}

/// `⌈k/2⌉`, the smallest value that is not low.
#[inline]
pub fn half_up(k: u32) -> u32 {
    k.div_ceil(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Roman,
    Perfect,
    Strong,
    PerfectStrong,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Roman,
        Variant::Perfect,
        Variant::Strong,
        Variant::PerfectStrong,
    ];

    /// Demand is an equality rather than a lower bound.
    pub fn is_perfect(self) -> bool {
        matches!(self, Variant::Perfect | Variant::PerfectStrong)
    }

    /// Only strong neighbors count toward the covering sum.
    pub fn is_strong(self) -> bool {
        matches!(self, Variant::Strong | Variant::PerfectStrong)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Roman => "roman",
            Variant::Perfect => "perfect",
            Variant::Strong => "strong",
            Variant::PerfectStrong => "perfect-strong",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "roman" | "r" => Ok(Variant::Roman),
            "perfect" | "p" => Ok(Variant::Perfect),
            "strong" | "s" => Ok(Variant::Strong),
            "perfect-strong" | "ps" => Ok(Variant::PerfectStrong),
            other => Err(format!(
                "unknown variant `{other}` (expected roman, perfect, strong or perfect-strong)"
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Isolated vertices must carry exactly k.
    Isolated { vertex: Vertex, value: u32 },
    /// Covering sum of a low vertex falls short of k.
    Shortfall { vertex: Vertex, sum: u64, short_by: u64 },
    /// Perfect variants only: covering sum of a low vertex exceeds k.
    Excess { vertex: Vertex, sum: u64, excess: u64 },
}

impl Violation {
    pub fn vertex(&self) -> Vertex {
        match *self {
            Violation::Isolated { vertex, .. }
            | Violation::Shortfall { vertex, .. }
            | Violation::Excess { vertex, .. } => vertex,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Isolated { vertex, value } => {
                write!(f, "isolated vertex {vertex} has value {value}")
            }
            Violation::Shortfall {
                vertex,
                sum,
                short_by,
            } => write!(f, "vertex {vertex} covered by {sum}, short by {short_by}"),
            Violation::Excess {
                vertex,
                sum,
                excess,
            } => write!(f, "vertex {vertex} covered by {sum}, over by {excess}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(Violation),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// The sum the variant's predicate compares against k for vertex `u`.
pub fn covering_sum(g: &Graph, values: &[u32], k: u32, variant: Variant, u: Vertex) -> u64 {
    let own = values[u] as u64;
    let nbrs = g.neighbors(u).iter().map(|&v| values[v]);
    if variant.is_strong() {
        own + nbrs.filter(|&x| is_strong(x, k)).map(u64::from).sum::<u64>()
    } else {
        own + nbrs.map(u64::from).sum::<u64>()
    }
}

fn vertex_violation(g: &Graph, values: &[u32], k: u32, variant: Variant, u: Vertex) -> Option<Violation> {
    let x = values[u];
    if g.is_isolated(u) {
        return (x != k).then_some(Violation::Isolated { vertex: u, value: x });
    }
    if !is_low(x, k) {
        return None;
    }
    let sum = covering_sum(g, values, k, variant, u);
    let k = k as u64;
    if sum < k {
        Some(Violation::Shortfall {
            vertex: u,
            sum,
            short_by: k - sum,
        })
    } else if variant.is_perfect() && sum > k {
        Some(Violation::Excess {
            vertex: u,
            sum,
            excess: sum - k,
        })
    } else {
        None
    }
}

fn violation_iter<'a>(
    g: &'a Graph,
    values: &'a [u32],
    k: u32,
    variant: Variant,
) -> impl Iterator<Item = Violation> + 'a {
    g.vertices()
        .filter_map(move |u| vertex_violation(g, values, k, variant, u))
}

fn check_shape(g: &Graph, f: &WeightFunction) -> Result<(), WeightError> {
    if f.len() != g.vertex_count() {
        return Err(WeightError::SizeMismatch {
            function: f.len(),
            graph: g.vertex_count(),
        });
    }
    Ok(())
}

/// Checks `f` against the variant's predicate, reporting the lowest-indexed
/// offending vertex.
pub fn validate(g: &Graph, f: &WeightFunction, variant: Variant) -> Result<Validity, WeightError> {
    check_shape(g, f)?;
    Ok(match violation_iter(g, &f.values, f.k, variant).next() {
        None => Validity::Valid,
        Some(v) => Validity::Invalid(v),
    })
}

/// Every violation, in vertex order.
pub fn violations(g: &Graph, f: &WeightFunction, variant: Variant) -> Result<Vec<Violation>, WeightError> {
    check_shape(g, f)?;
    Ok(violation_iter(g, &f.values, f.k, variant).collect())
}

/// Allocation-free predicate over a raw value slice of length `|V|`.
pub fn satisfies(g: &Graph, values: &[u32], k: u32, variant: Variant) -> bool {
    debug_assert_eq!(values.len(), g.vertex_count());
    violation_iter(g, values, k, variant).next().is_none()
}

pub fn is_valid(g: &Graph, f: &WeightFunction, variant: Variant) -> bool {
    f.len() == g.vertex_count() && satisfies(g, &f.values, f.k, variant)
}

/// Every vertex gets `⌈k/2⌉`, except isolated vertices which must carry `k`.
/// Valid for all four variants.
pub fn uniform_upper_bound_function(g: &Graph, k: u32) -> WeightFunction {
    let values = g
        .vertices()
        .map(|u| if g.is_isolated(u) { k } else { half_up(k) })
        .collect();
    WeightFunction { values, k }
}

pub fn uniform_upper_bound(g: &Graph, k: u32) -> u64 {
    let iso = g.isolated_count() as u64;
    (g.vertex_count() as u64 - iso) * half_up(k) as u64 + iso * k as u64
}

/// Neighbors `v` of a low vertex `u` with `f(v) > k/2`.
pub fn strong_neighbor_witnesses(g: &Graph, f: &WeightFunction, u: Vertex) -> Result<Vec<Vertex>, WeightError> {
    check_shape(g, f)?;
    if u >= g.vertex_count() {
        return Err(WeightError::Precondition(format!(
            "vertex {u} not in graph"
        )));
    }
    if !is_low(f.get(u), f.k) {
        return Err(WeightError::Precondition(format!(
            "vertex {u} has value {} which is not below k/2",
            f.get(u)
        )));
    }
    Ok(g.neighbors(u)
        .iter()
        .copied()
        .filter(|&v| is_strong(f.get(v), f.k))
        .collect())
}
