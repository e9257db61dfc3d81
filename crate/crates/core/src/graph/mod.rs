//! Simple undirected graphs with precomputed closed neighborhoods.

mod chordal;
pub mod generate;
pub mod io;

pub use chordal::{is_chordal, perfect_elimination_ordering};
pub use generate::{generate, Family, GenMeta, GenSpec, Generated, BA_MAX_DENSITY};

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

/// An immutable simple graph on vertices `0..n`.
///
/// Neighbor lists are sorted; `closed[v]` is `N[v] = N(v) ∪ {v}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    closed: Vec<VertexSet>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, out-of-range endpoints and
    /// repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut closed: Vec<VertexSet> = (0..n).map(|v| VertexSet::from_vertices(n, [v])).collect();
        let mut edge_count = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v, "vertex index out of range"));
            }
            if u == v {
                return Err(Error::InvalidEdge(u, v, "self-loop"));
            }
            if !closed[u].insert(v) {
                return Err(Error::InvalidEdge(u, v, "duplicate edge"));
            }
            closed[v].insert(u);
            edge_count += 1;
        }
        Ok(Self::from_closed(closed, edge_count))
    }

    fn from_closed(closed: Vec<VertexSet>, edge_count: usize) -> Self {
        let adjacency = closed
            .iter()
            .enumerate()
            .map(|(v, s)| s.iter().filter(|&u| u != v).collect())
            .collect();
        Self {
            n: closed.len(),
            adjacency,
            closed,
            edge_count,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, []).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    /// Star with center 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|l| (0, l))).expect("star is valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// `N[v]`.
    #[inline]
    pub fn closed_neighborhood(&self, v: usize) -> &VertexSet {
        &self.closed[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.closed[u].contains(v)
    }

    /// `N[S] = ⋃_{v ∈ S} N[v]`.
    pub fn closed_neighborhood_of(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in s {
            out.union_with(&self.closed[v]);
        }
        out
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Edge density `m / C(n, 2)`; zero for graphs with fewer than two vertices.
    pub fn density(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        self.edge_count as f64 / (self.n * (self.n - 1) / 2) as f64
    }

    /// The graph square: `u ~ v` iff their distance in `self` is 1 or 2.
    pub fn square(&self) -> Graph {
        let mut closed = Vec::with_capacity(self.n);
        let mut edge_count = 0;
        for v in 0..self.n {
            let mut reach = self.closed[v].clone();
            for &u in &self.adjacency[v] {
                reach.union_with(&self.closed[u]);
            }
            edge_count += reach.len() - 1;
            closed.push(reach);
        }
        Self::from_closed(closed, edge_count / 2)
    }

    /// Complement graph (no self-loops).
    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let mut edge_count = 0;
        let closed: Vec<VertexSet> = (0..self.n)
            .map(|v| {
                let mut c = full.difference(&self.closed[v]);
                c.insert(v);
                edge_count += c.len() - 1;
                c
            })
            .collect();
        Self::from_closed(closed, edge_count / 2)
    }

    /// Whether `s` induces a complete subgraph.
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| s.is_subset(&self.closed[v]))
    }

    /// Whether `s` is pairwise non-adjacent.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.closed[v].intersection_len(s) == 1)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// `N[S]` for a vertex set `s` of `g`.
pub fn closed_nbhd_of_set(g: &Graph, s: &VertexSet) -> VertexSet {
    g.closed_neighborhood_of(s)
}
