//! Graph families used throughout the workbench.
//!
//! Labelling is fixed so fixtures stay reproducible: bipartite generators put
//! side A first, joins and unions keep operand order, pendants are appended
//! target by target.

use rand::Rng;

use crate::graph::{BipartitionLabels, Builder, Graph, GraphError, Vertex};

/// `K_{m,n}` with side A = `0..m`, side B = `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<(Graph, BipartitionLabels), GraphError> {
    if m == 0 || n == 0 {
        return Err(GraphError::InvalidParameter(format!(
            "complete bipartite graph needs both parts non-empty, got K_{{{m},{n}}}"
        )));
    }
    let mut b = Builder::new(m + n);
    for u in 0..m {
        for v in m..m + n {
            b.link(u, v);
        }
    }
    Ok((b.build(), BipartitionLabels::contiguous(m, n)))
}

pub fn complete(n: usize) -> Graph {
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            b.link(u, v);
        }
    }
    b.build()
}

pub fn path(n: usize) -> Graph {
    let mut b = Builder::new(n);
    for u in 1..n {
        b.link(u - 1, u);
    }
    b.build()
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let mut b = Builder::new(n);
    for u in 1..n {
        b.link(u - 1, u);
    }
    b.link(n - 1, 0);
    Ok(b.build())
}

pub fn empty(n: usize) -> Graph {
    Builder::new(n).build()
}

/// Disjoint union of `g` and `h` plus every edge between them. Vertices of
/// `g` keep their labels; `h` is shifted by `|V(g)|`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let offset = g.vertex_count();
    let mut b = Builder::new(offset + h.vertex_count());
    for (u, v) in g.edges() {
        b.link(u, v);
    }
    for (u, v) in h.edges() {
        b.link(u + offset, v + offset);
    }
    for u in g.vertices() {
        for v in h.vertices() {
            b.link(u, v + offset);
        }
    }
    b.build()
}

/// The fan `F_{m,n}`: `join(empty(n), path(m))`.
pub fn fan(m: usize, n: usize) -> Graph {
    join(&empty(n), &path(m))
}

pub fn disjoint_union(graphs: &[Graph]) -> Graph {
    let mut b = Builder::new(0);
    for g in graphs {
        let offset = b.add_vertices(g.vertex_count());
        for (u, v) in g.edges() {
            b.link(u + offset, v + offset);
        }
    }
    b.build()
}

/// Adds `count` new degree-one vertices adjacent to each target, in target order.
pub fn attach_pendants(g: &Graph, targets: &[Vertex], count: usize) -> Result<Graph, GraphError> {
    if count == 0 {
        return Err(GraphError::InvalidParameter(
            "pendant count must be positive".into(),
        ));
    }
    if let Some(&bad) = targets.iter().find(|&&t| t >= g.vertex_count()) {
        return Err(GraphError::VertexOutOfRange {
            vertex: bad,
            vertex_count: g.vertex_count(),
        });
    }
    let mut b = Builder::new(g.vertex_count());
    for (u, v) in g.edges() {
        b.link(u, v);
    }
    for &t in targets {
        let first = b.add_vertices(count);
        for p in first..first + count {
            b.link(t, p);
        }
    }
    Ok(b.build())
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = Builder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                b.link(u, v);
            }
        }
    }
    b.build()
}

/// Every labelled simple graph on `n` vertices, one per subset of the
/// `n(n-1)/2` vertex pairs (bit `i` of the mask selects the `i`-th pair in
/// lexicographic order).
pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 32, "too many labelled graphs to enumerate");
    (0u32..(1u32 << pairs.len())).map(move |mask| {
        let mut b = Builder::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                b.link(u, v);
            }
        }
        b.build()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_spanning_subgraph;

    fn degree_sum(g: &Graph) -> usize {
        g.vertices().map(|u| g.degree(u)).sum()
    }

    #[test]
    fn complete_bipartite_sizes() {
        let (k2, _) = complete_bipartite(1, 1).unwrap();
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));
        let (g, _) = complete_bipartite(2, 3).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 6));
        assert!(complete_bipartite(0, 3).is_err());
        assert!(complete_bipartite(3, 0).is_err());
    }

    #[test]
    fn complete_bipartite_sides_are_independent() {
        let (g, labels) = complete_bipartite(3, 9).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (12, 27));
        for (u, v) in g.edges() {
            let ua = labels.side_a.contains(&u);
            let va = labels.side_a.contains(&v);
            assert_ne!(ua, va, "edge {u}-{v} stays inside one side");
        }
        assert_eq!(labels.side_a.len() + labels.side_b.len(), 12);
    }

    #[test]
    fn small_families() {
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(path(4).edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(empty(3).edge_count(), 0);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert!(cycle(2).is_err());
        for g in [complete(5), path(6), cycle(7).unwrap(), fan(4, 3)] {
            assert_eq!(degree_sum(&g), 2 * g.edge_count());
        }
    }

    #[test]
    fn joins() {
        let (kmn, _) = complete_bipartite(3, 4).unwrap();
        assert_eq!(join(&empty(3), &empty(4)), kmn);

        let k4 = join(&path(2), &path(2));
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.degree_sequence(), complete(4).degree_sequence());

        let f = fan(4, 3);
        assert_eq!(f.edge_count(), 3 + 12);
        let (k34, _) = complete_bipartite(3, 4).unwrap();
        assert!(is_spanning_subgraph(&k34, &f));
    }

    #[test]
    fn unions() {
        let k2 = complete(2);
        let u = disjoint_union(&[k2.clone(), k2.clone(), k2.clone()]);
        assert_eq!(u.component_count(), 3);
        assert_eq!(disjoint_union(&[path(3)]), path(3));
        let kk = disjoint_union(&[complete(3), complete(3)]);
        assert_eq!((kk.vertex_count(), kk.edge_count(), kk.component_count()), (6, 6, 2));
    }

    #[test]
    fn pendants() {
        let (g, labels) = complete_bipartite(3, 9).unwrap();
        let gadget = attach_pendants(&g, &labels.side_a, 3).unwrap();
        assert_eq!(gadget.vertex_count(), 21);
        assert_eq!(gadget.edge_count(), 27 + 9);
        assert_eq!(attach_pendants(&g, &[], 3).unwrap(), g);
        assert_eq!(attach_pendants(&complete(2), &[0], 1).unwrap(), {
            // 0 is the hub, so relabel path 1-0-2
            Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap()
        });
        assert_eq!(
            attach_pendants(&complete(2), &[0], 1).unwrap().degree_sequence(),
            path(3).degree_sequence()
        );
        assert!(attach_pendants(&g, &[12], 1).is_err());
    }

    #[test]
    fn labelled_enumeration_counts() {
        assert_eq!(all_labelled(1).count(), 1);
        assert_eq!(all_labelled(4).count(), 64);
        assert_eq!(all_labelled(3).filter(|g| g.edge_count() == 1).count(), 3);
    }
}
