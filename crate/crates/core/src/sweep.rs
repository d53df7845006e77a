//! Closed form versus solver over a grid of `(m, n, k)` cells.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::kmn::{formula, FormulaResult};
use crate::solvers::{solve_kmn_multiset, Budget};
use crate::weights::Variant;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepSpec {
    pub m: RangeInclusive<usize>,
    pub n: RangeInclusive<usize>,
    pub k: RangeInclusive<u32>,
    pub variants: Vec<Variant>,
    pub budget: Budget,
}

impl SweepSpec {
    /// Cells in report order: variant, then `m`, `n`, `k`. Only `m <= n` is
    /// visited since `K_{m,n}` and `K_{n,m}` are the same graph.
    pub fn cells(&self) -> Vec<(Variant, usize, usize, u32)> {
        let mut out = Vec::new();
        for &v in &self.variants {
            for m in self.m.clone() {
                for n in self.n.clone().filter(|&n| n >= m) {
                    for k in self.k.clone() {
                        out.push((v, m, n, k));
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    /// Exact closed form equal to the solver value.
    Match,
    /// Solver value lies in a two-value or interval closed form.
    Contained,
    Mismatch,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellReport {
    pub variant: Variant,
    pub m: usize,
    pub n: usize,
    pub k: u32,
    pub formula: FormulaResult,
    pub solver_value: u64,
    pub solver_exact: bool,
    pub witness: Vec<u32>,
    pub status: CellStatus,
}

impl CellReport {
    pub fn is_discrepancy(&self) -> bool {
        self.status == CellStatus::Mismatch
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "variant": self.variant.name(),
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "formula": self.formula.to_json(),
            "solver": self.solver_value,
            "solver_exact": self.solver_exact,
            "witness": self.witness,
            "status": self.status,
        })
    }
}

pub fn evaluate_cell(variant: Variant, m: usize, n: usize, k: u32, budget: Budget) -> CellReport {
    let formula = formula(m, n, k, variant).expect("sweep cells are positive");
    let r = solve_kmn_multiset(m, n, k, variant, budget).expect("sweep cells within solver caps");
    let status = if !r.exact {
        CellStatus::BudgetExceeded
    } else if !formula.contains(r.value) {
        CellStatus::Mismatch
    } else if formula.exact_value().is_some() {
        CellStatus::Match
    } else {
        CellStatus::Contained
    };
    CellReport {
        variant,
        m,
        n,
        k,
        formula,
        solver_value: r.value,
        solver_exact: r.exact,
        witness: r.witness.into_values(),
        status,
    }
}

/// Evaluates every cell on the current rayon pool; output follows
/// [`SweepSpec::cells`] order.
pub fn verify(spec: &SweepSpec) -> Vec<CellReport> {
    spec.cells()
        .into_par_iter()
        .map(|(v, m, n, k)| evaluate_cell(v, m, n, k, spec.budget))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub cells: usize,
    pub matches: usize,
    pub contained: usize,
    pub mismatches: usize,
    pub budget_exceeded: usize,
}

pub fn summarize(cells: &[CellReport]) -> SweepSummary {
    let mut s = SweepSummary {
        cells: cells.len(),
        ..SweepSummary::default()
    };
    for c in cells {
        match c.status {
            CellStatus::Match => s.matches += 1,
            CellStatus::Contained => s.contained += 1,
            CellStatus::Mismatch => s.mismatches += 1,
            CellStatus::BudgetExceeded => s.budget_exceeded += 1,
        }
    }
    s
}

const HEADER: [&str; 7] = ["m", "n", "k", "formula", "case", "solver", "match"];

fn row(c: &CellReport) -> [String; 7] {
    let solver = if c.solver_exact {
        c.solver_value.to_string()
    } else {
        format!("<={}", c.solver_value)
    };
    let flag = match c.status {
        CellStatus::Match | CellStatus::Contained => "yes",
        CellStatus::Mismatch => "NO",
        CellStatus::BudgetExceeded => "budget",
    };
    [
        c.m.to_string(),
        c.n.to_string(),
        c.k.to_string(),
        c.formula.to_string(),
        c.formula.case_label.clone(),
        solver,
        flag.to_string(),
    ]
}

pub fn render_csv(cells: &[CellReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for c in cells {
        w.write_record(row(c)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Markdown table with columns padded to a common width.
pub fn render_markdown(cells: &[CellReport]) -> String {
    let rows: Vec<[String; 7]> = cells.iter().map(row).collect();
    let mut widths = HEADER.map(str::len);
    for r in &rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(HEADER.iter().map(|s| s.to_string()).collect());
    out += &line(widths.iter().map(|&w| "-".repeat(w)).collect());
    for r in rows {
        out += &line(r.to_vec());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: RangeInclusive<usize>, n: RangeInclusive<usize>, k: RangeInclusive<u32>, v: Vec<Variant>) -> SweepSpec {
        SweepSpec {
            m,
            n,
            k,
            variants: v,
            budget: Budget::unlimited(),
        }
    }

    #[test]
    fn small_grid_has_no_discrepancies() {
        let cells = verify(&spec(1..=3, 1..=4, 1..=4, Variant::ALL.to_vec()));
        let s = summarize(&cells);
        assert_eq!(s.mismatches, 0);
        assert_eq!(s.cells, cells.len());
        assert!(s.matches > 0);
    }

    #[test]
    fn cells_skip_mirror_images() {
        let s = spec(1..=3, 1..=3, 1..=1, vec![Variant::Roman]);
        assert_eq!(s.cells().len(), 6);
        assert_eq!(s.cells()[0], (Variant::Roman, 1, 1, 1));
    }

    #[test]
    fn strong_k2_m3_cell() {
        let c = evaluate_cell(Variant::Strong, 3, 3, 2, Budget::unlimited());
        assert_eq!(c.solver_value, 4);
        assert_eq!(c.status, CellStatus::Match);
    }

    #[test]
    fn renderings() {
        let cells = verify(&spec(2..=2, 2..=2, 3..=3, vec![Variant::Perfect]));
        assert_eq!(
            render_csv(&cells),
            "m,n,k,formula,case,solver,match\n2,2,3,4,\"k odd, m=2, (2n-1) | k: k(3n-2)/(2n-1)\",4,yes\n"
        );
        let md = render_markdown(&cells);
        assert!(md.starts_with("| m | n | k | formula | case "));
        assert_eq!(md.lines().count(), 3);
    }
}
