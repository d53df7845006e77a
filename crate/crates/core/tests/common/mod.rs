#![allow(dead_code)]

use kroman::generators::complete_bipartite;
use kroman::Graph;
use proptest::prelude::*;

/// Graph on `n` vertices from a bit per vertex pair, pairs in lexicographic order.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = pairs.zip(bits).filter(|(_, &b)| b).map(|(e, _)| e).collect();
    Graph::from_edges(n, edges).unwrap()
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

pub fn kmn(m: usize, n: usize) -> Graph {
    complete_bipartite(m, n).unwrap().0
}

/// Minimum of `sum(f)` over `f: V -> 0..=top` accepted by `ok`, by plain
/// enumeration.
pub fn brute_min(g: &Graph, top: u32, ok: impl Fn(&Graph, &[u32]) -> bool) -> u64 {
    let n = g.vertex_count();
    let mut f = vec![0u32; n];
    let mut best = u64::MAX;
    loop {
        if ok(g, &f) {
            best = best.min(f.iter().map(|&x| x as u64).sum());
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            if f[i] < top {
                f[i] += 1;
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Classical Roman domination: every 0 has a neighbour labelled 2.
pub fn classical_roman(g: &Graph, f: &[u32]) -> bool {
    g.vertices().all(|u| f[u] != 0 || g.neighbors(u).iter().any(|&v| f[v] == 2))
}

/// Double Roman domination: a 0 needs a neighbour labelled 3 or two labelled
/// 2; a 1 needs a neighbour labelled at least 2.
pub fn double_roman(g: &Graph, f: &[u32]) -> bool {
    g.vertices().all(|u| {
        let nb = g.neighbors(u);
        match f[u] {
            0 => nb.iter().any(|&v| f[v] == 3) || nb.iter().filter(|&&v| f[v] == 2).count() >= 2,
            1 => nb.iter().any(|&v| f[v] >= 2),
            _ => true,
        }
    })
}
