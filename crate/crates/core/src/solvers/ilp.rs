//! CPLEX LP export.
//!
//! Binaries `x_v_i` select value `i` for vertex `v`; `z_u` is 1 exactly when
//! `u` is low. Perfect variants add a big-M upper row that only binds when
//! `z_u = 1`.

use std::fmt::Write as _;

use crate::graph::Graph;
use crate::weights::{is_low, is_strong, Variant};

const TERMS_PER_LINE: usize = 8;

fn x(v: usize, i: u32) -> String {
    format!("x_{v}_{i}")
}

fn z(u: usize) -> String {
    format!("z_{u}")
}

fn write_expr(out: &mut String, terms: &[(i64, String)]) {
    for (idx, (coef, name)) in terms.iter().enumerate() {
        if idx > 0 && idx % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if *coef < 0 { "-" } else { "+" };
        let mag = coef.unsigned_abs();
        match (idx, mag) {
            (0, 1) if *coef > 0 => write!(out, " {name}"),
            (0, _) if *coef > 0 => write!(out, " {mag} {name}"),
            (_, 1) => write!(out, " {sign} {name}"),
            _ => write!(out, " {sign} {mag} {name}"),
        }
        .unwrap();
    }
}

fn row(out: &mut String, name: &str, terms: &[(i64, String)], sense: &str, rhs: i64) {
    write!(out, " {name}:").unwrap();
    write_expr(out, terms);
    writeln!(out, " {sense} {rhs}").unwrap();
}

/// Value terms `i * x_v_i` for every value admitted by `keep`.
fn value_terms(v: usize, k: u32, keep: impl Fn(u32) -> bool) -> Vec<(i64, String)> {
    (1..=k).filter(|&i| keep(i)).map(|i| (i as i64, x(v, i))).collect()
}

pub fn export_ilp(g: &Graph, k: u32, variant: Variant) -> String {
    let mut out = String::new();
    writeln!(out, "\\ {} domination, k = {k}, |V| = {}", variant.name(), g.vertex_count()).unwrap();
    out.push_str("Minimize\n obj:");
    let objective: Vec<_> = g.vertices().flat_map(|v| value_terms(v, k, |_| true)).collect();
    write_expr(&mut out, &objective);
    out.push_str("\nSubject To\n");

    for v in g.vertices() {
        let terms: Vec<_> = (0..=k).map(|i| (1, x(v, i))).collect();
        row(&mut out, &format!("assign_{v}"), &terms, "=", 1);
    }
    for u in g.vertices() {
        let mut terms = vec![(1, z(u))];
        terms.extend((0..=k).filter(|&i| is_low(i, k)).map(|i| (-1, x(u, i))));
        row(&mut out, &format!("low_{u}"), &terms, "=", 0);
    }
    for u in g.vertices() {
        let mut terms = value_terms(u, k, |_| true);
        for &v in g.neighbors(u) {
            if variant.is_strong() {
                terms.extend(value_terms(v, k, |i| is_strong(i, k)));
            } else {
                terms.extend(value_terms(v, k, |_| true));
            }
        }
        let mut cover = terms.clone();
        cover.push((-(k as i64), z(u)));
        row(&mut out, &format!("cover_{u}"), &cover, ">=", 0);
        if variant.is_perfect() {
            let big_m = k as i64 * (g.degree(u) as i64 + 1);
            terms.push((big_m, z(u)));
            row(&mut out, &format!("exact_{u}"), &terms, "<=", k as i64 + big_m);
        }
    }
    for u in g.vertices().filter(|&u| g.is_isolated(u)) {
        row(&mut out, &format!("pin_{u}"), &[(1, x(u, k))], "=", 1);
    }

    out.push_str("Binary\n");
    for v in g.vertices() {
        let names: Vec<_> = (0..=k).map(|i| x(v, i)).chain(std::iter::once(z(v))).collect();
        for chunk in names.chunks(TERMS_PER_LINE) {
            writeln!(out, " {}", chunk.join(" ")).unwrap();
        }
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete;

    #[test]
    fn single_vertex_is_pinned() {
        let lp = export_ilp(&complete(1), 3, Variant::Roman);
        assert!(lp.contains(" pin_0: x_0_3 = 1\n"));
        assert!(lp.contains("Minimize\n obj: x_0_1 + 2 x_0_2 + 3 x_0_3\n"));
        assert!(lp.ends_with("End\n"));
    }

    #[test]
    fn perfect_rows_use_big_m() {
        let lp = export_ilp(&complete(2), 2, Variant::Perfect);
        assert!(lp.contains(" exact_0: x_0_1 + 2 x_0_2 + x_1_1 + 2 x_1_2 + 4 z_0 <= 6\n"));
        assert!(lp.contains(" cover_1: x_1_1 + 2 x_1_2 + x_0_1 + 2 x_0_2 - 2 z_1 >= 0\n"));
        assert!(lp.contains(" low_0: z_0 - x_0_0 = 0\n"));
    }

    #[test]
    fn strong_rows_count_only_strong_neighbours() {
        let lp = export_ilp(&complete(2), 3, Variant::Strong);
        assert!(lp.contains(" cover_0: x_0_1 + 2 x_0_2 + 3 x_0_3 + 2 x_1_2 + 3 x_1_3 - 3 z_0 >= 0\n"));
        assert!(!lp.contains("exact_"));
    }
}
