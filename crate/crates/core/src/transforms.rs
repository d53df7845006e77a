//! Constructive rewrites of dominating functions and the pendant gadget.

use serde::Serialize;
use thiserror::Error;

use crate::generators::{attach_pendants, complete_bipartite};
use crate::graph::{Graph, GraphError};
use crate::solvers::{solve_bnb, BnbOptions, Budget, SolveError};
use crate::weights::{half_up, is_low, is_strong, validate, Validity, Variant, Violation, WeightError, WeightFunction};

pub const MAX_GADGET_VERTICES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("input is not a valid {variant} function: {violation}")]
    NotValid { variant: Variant, violation: Violation },
    #[error("input has value {value} at vertex {vertex}, strictly between 0 and k/2")]
    NotGapFree { vertex: usize, value: u32 },
    #[error("gadget needs m >= 3 and ell >= 2, got m = {m}, ell = {ell}")]
    GadgetParams { m: usize, ell: u32 },
    #[error("gadget would have {vertices} vertices, above the cap {MAX_GADGET_VERTICES}")]
    GadgetTooLarge { vertices: u128 },
}

fn require_valid(g: &Graph, f: &WeightFunction, variant: Variant) -> Result<(), TransformError> {
    match validate(g, f, variant)? {
        Validity::Valid => Ok(()),
        Validity::Invalid(violation) => Err(TransformError::NotValid { variant, violation }),
    }
}

/// Rewrites a strong function so that every value is 0 or at least `k/2`,
/// without increasing its weight.
///
/// Each vertex `u` with `0 < f(u) < k/2`, in index order, is set to 0. If its
/// strong neighbours carry a total `j < k`, the lowest-indexed one of them is
/// raised by `k - j` to keep `u` covered.
pub fn normalize_strong(g: &Graph, f: &WeightFunction) -> Result<WeightFunction, TransformError> {
    require_valid(g, f, Variant::Strong)?;
    let k = f.k();
    let mut values = f.values().to_vec();
    for u in g.vertices() {
        if values[u] == 0 || !is_low(values[u], k) {
            continue;
        }
        let strong: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| is_strong(values[v], k)).collect();
        let j: u64 = strong.iter().map(|&v| values[v] as u64).sum();
        if j < k as u64 {
            // f(u) < k/2 and f(u) + j >= k force at least one strong neighbour
            let v0 = strong[0];
            values[v0] = (values[v0] + (k - j as u32)).min(k);
        }
        values[u] = 0;
    }
    Ok(WeightFunction::new(values, k)?)
}

/// Turns a gap-free strong `k` function into a strong `k+1` function by
/// adding 1 to every positive value.
pub fn lift_strong(g: &Graph, f: &WeightFunction) -> Result<WeightFunction, TransformError> {
    require_valid(g, f, Variant::Strong)?;
    let k = f.k();
    if let Some((vertex, &value)) = f.values().iter().enumerate().find(|(_, &x)| x > 0 && is_low(x, k)) {
        return Err(TransformError::NotGapFree { vertex, value });
    }
    let values = f.values().iter().map(|&x| if x > 0 { x + 1 } else { 0 }).collect();
    Ok(WeightFunction::new(values, k + 1)?)
}

/// Largest value that the Roman lift raises: `floor(k/2)`.
pub fn roman_lift_threshold(k: u32) -> u32 {
    k / 2
}

/// Turns a Roman `k` function into a Roman `k+1` function by adding 1 to
/// every value at most `floor(k/2)`. Isolated vertices go to `k+1`.
pub fn lift_roman(g: &Graph, f: &WeightFunction) -> Result<WeightFunction, TransformError> {
    require_valid(g, f, Variant::Roman)?;
    let k = f.k();
    let r = roman_lift_threshold(k);
    let values = g
        .vertices()
        .map(|u| match f.get(u) {
            _ if g.is_isolated(u) => k + 1,
            x if x <= r => x + 1,
            x => x,
        })
        .collect();
    Ok(WeightFunction::new(values, k + 1)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetParams {
    pub m: usize,
    pub ell: u32,
}

impl GadgetParams {
    pub fn vertex_count(&self) -> u128 {
        (self.m as u128).pow(self.ell) + 4 * self.m as u128
    }
}

/// `K_{m, m^ell}` with three pendant vertices on every vertex of the small
/// side. Side A is `0..m`, side B follows, pendants come last in groups of
/// three.
pub fn build_gadget(p: GadgetParams) -> Result<Graph, TransformError> {
    if p.m < 3 || p.ell < 2 {
        return Err(TransformError::GadgetParams { m: p.m, ell: p.ell });
    }
    let vertices = p.vertex_count();
    if vertices > MAX_GADGET_VERTICES as u128 {
        return Err(TransformError::GadgetTooLarge { vertices });
    }
    let big = p.m.pow(p.ell);
    let (base, labels) = complete_bipartite(p.m, big)?;
    Ok(attach_pendants(&base, &labels.side_a, 3)?)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GadgetReport {
    pub m: usize,
    pub ell: u32,
    pub k: u32,
    pub vertices: usize,
    /// Perfect number of the gadget (an upper bound when not `exact`).
    pub value: u64,
    pub exact: bool,
    /// `mk + m^ell * ⌈k/2⌉`.
    pub lower_bound: u64,
    pub bound_holds: bool,
    /// `value / |V|`.
    pub ratio: f64,
    /// `⌈k/2⌉`, the per-vertex weight of the uniform function.
    pub reference: u32,
    pub ratio_to_reference: f64,
    pub witness: Vec<u32>,
}

/// Solves the gadget's perfect number exactly and reports it against the
/// per-side lower bound and the uniform density `⌈k/2⌉`.
pub fn gadget_lower_bound_check(p: GadgetParams, k: u32, budget: Budget) -> Result<GadgetReport, TransformError> {
    let g = build_gadget(p)?;
    let r = solve_bnb(
        &g,
        k,
        Variant::Perfect,
        BnbOptions {
            budget,
            parallel: true,
            ..BnbOptions::default()
        },
    )?;
    let reference = half_up(k);
    let lower_bound = (p.m * k as usize + p.m.pow(p.ell) * reference as usize) as u64;
    let ratio = r.value as f64 / g.vertex_count() as f64;
    Ok(GadgetReport {
        m: p.m,
        ell: p.ell,
        k,
        vertices: g.vertex_count(),
        value: r.value,
        exact: r.exact,
        lower_bound,
        bound_holds: r.exact && r.value >= lower_bound,
        ratio,
        reference,
        ratio_to_reference: ratio / reference as f64,
        witness: r.witness.into_values(),
    })
}
