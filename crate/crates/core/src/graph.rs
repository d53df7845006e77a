//! Simple undirected graphs on dense `0..n` vertex indices.
//!
//! Adjacency is kept twice: as sorted neighbor lists (iteration) and as one
//! bitset per vertex (subset and membership queries). Graphs are immutable
//! once built; every "mutating" helper returns a new graph.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: Vertex },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: Vertex, v: Vertex },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    bits: Vec<FixedBitSet>,
    edge_count: usize,
}

/// The two sides of a bipartite graph produced by one of the bipartite
/// generators. `side_a` always precedes `side_b` in the vertex labelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionLabels {
    pub side_a: Vec<Vertex>,
    pub side_b: Vec<Vertex>,
}

impl BipartitionLabels {
    pub fn contiguous(m: usize, n: usize) -> Self {
        Self {
            side_a: (0..m).collect(),
            side_b: (m..m + n).collect(),
        }
    }
}

/// Accumulates edges for generators whose output is simple by construction.
pub(crate) struct Builder {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

impl Builder {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub(crate) fn add_vertices(&mut self, count: usize) -> Vertex {
        let first = self.adj.len();
        self.adj.resize(first + count, Vec::new());
        first
    }

    pub(crate) fn link(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edge_count += 1;
    }

    pub(crate) fn build(self) -> Graph {
        let n = self.adj.len();
        let mut adj = self.adj;
        let mut bits = Vec::with_capacity(n);
        for list in adj.iter_mut() {
            list.sort_unstable();
            let mut set = FixedBitSet::with_capacity(n);
            for &v in list.iter() {
                set.insert(v);
            }
            bits.push(set);
        }
        Graph {
            adj,
            bits,
            edge_count: self.edge_count,
        }
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list, rejecting anything that
    /// would make it non-simple.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut seen: Vec<FixedBitSet> = (0..vertex_count)
            .map(|_| FixedBitSet::with_capacity(vertex_count))
            .collect();
        let mut builder = Builder::new(vertex_count);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop { vertex: u });
            }
            if seen[u].contains(v) {
                return Err(GraphError::DuplicateEdge {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
            seen[u].insert(v);
            seen[v].insert(u);
            builder.link(u, v);
        }
        Ok(builder.build())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Open neighborhood N(u), sorted ascending.
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn neighbor_bits(&self, u: Vertex) -> &FixedBitSet {
        &self.bits[u]
    }

    /// Closed neighborhood N[u] = N(u) ∪ {u}, ascending.
    pub fn closed_neighborhood(&self, u: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.adj[u].len() + 1);
        let split = self.adj[u].partition_point(|&v| v < u);
        out.extend_from_slice(&self.adj[u][..split]);
        out.push(u);
        out.extend_from_slice(&self.adj[u][split..]);
        out
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_isolated(&self, u: Vertex) -> bool {
        self.adj[u].is_empty()
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|l| l.is_empty()).count()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.bits[u].contains(v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Vertex pairs `(u, v)`, `u < v`, that are not edges, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |u| ((u + 1)..n).filter(move |&v| !self.bits[u].contains(v)).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        seq.sort_unstable_by(|a, b| b.cmp(a));
        seq
    }

    /// Component index per vertex, numbered in order of smallest member.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for root in 0..n {
            if comp[root] != usize::MAX {
                continue;
            }
            comp[root] = next;
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    /// Returns a copy with one extra edge.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        Graph::from_edges(self.vertex_count(), self.edges().chain(std::iter::once((u, v))))
    }

    /// Recognizes `K_{m,n}` in the canonical labelling used by
    /// [`crate::generators::complete_bipartite`]: vertices `0..m` on one side,
    /// `m..m+n` on the other. Returns `(m, n)`.
    pub fn complete_bipartite_parts(&self) -> Option<(usize, usize)> {
        let total = self.vertex_count();
        if total < 2 {
            return None;
        }
        let n = self.degree(0);
        if n == 0 || n >= total {
            return None;
        }
        let m = total - n;
        if self.edge_count != m * n {
            return None;
        }
        let side_ok = |range: std::ops::Range<usize>, other: std::ops::Range<usize>| {
            range.into_iter().all(|u| {
                let list = &self.adj[u];
                list.len() == other.len() && list.iter().copied().eq(other.clone())
            })
        };
        (side_ok(0..m, m..total) && side_ok(m..total, 0..m)).then_some((m, n))
    }
}

/// True iff `h` and `g` share a vertex set and every edge of `h` is an edge of `g`.
pub fn is_spanning_subgraph(h: &Graph, g: &Graph) -> bool {
    h.vertex_count() == g.vertex_count()
        && h.vertices()
            .all(|u| h.neighbor_bits(u).is_subset(g.neighbor_bits(u)))
}
