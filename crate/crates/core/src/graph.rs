//! Simple undirected graphs.
//!
//! [`Graph`] is the bit-set representation used everywhere on the hot path
//! (at most [`MAX_VERTICES`] vertices, one `u64` row per vertex).
//! [`SparseGraph`] is an unbounded adjacency-list representation used for the
//! larger constructed graphs. Both implement [`Adjacency`], which is what the
//! structural predicates and subgraph detectors are written against.

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

/// Largest vertex count representable by [`Graph`].
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported by the bit-set representation")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} not present")]
    MissingEdge(usize, usize),
    #[error("operation requires at least one vertex")]
    Empty,
}

/// Read-only adjacency access shared by both graph representations.
pub trait Adjacency {
    fn order(&self) -> usize;
    fn size(&self) -> usize;
    fn has_edge(&self, u: usize, v: usize) -> bool;
    fn degree(&self, v: usize) -> usize;
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;

    fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.order() {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

pub(crate) type Rows = SmallVec<[u64; 12]>;

/// Simple graph on at most 64 vertices with bit-set rows.
///
/// Values are immutable from the outside: the editing operations return a
/// fresh graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Rows,
    edges: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            rows: smallvec::smallvec![0; n],
            edges: 0,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.insert_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Build directly from adjacency rows. Rows must be symmetric and loop-free.
    pub(crate) fn from_rows(rows: Rows) -> Self {
        debug_assert!(rows.len() <= MAX_VERTICES);
        let edges = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        let g = Graph { rows, edges };
        debug_assert!(g.is_consistent());
        g
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.rows.len())
    }

    /// New graph with the edge `uv` added.
    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        Ok(self.with_edge(u, v))
    }

    /// New graph with the edge `uv` removed.
    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::MissingEdge(u, v));
        }
        Ok(self.without_edge(u, v))
    }

    /// New graph with `v` removed; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        let low = (1u64 << v) - 1;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|&(u, _)| u != v)
            .map(|(_, &r)| (r & low) | ((r >> 1) & !low))
            .collect();
        Ok(Graph::from_rows(rows))
    }

    /// Subgraph induced on the vertices in `mask`, relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: SmallVec<[usize; 16]> = bits(mask & self.vertex_mask()).collect();
        let rows = keep
            .iter()
            .map(|&u| {
                let r = self.rows[u];
                keep.iter()
                    .enumerate()
                    .filter(|&(_, &w)| r >> w & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Graph::from_rows(rows)
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.order() + other.order();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let shift = self.order();
        let rows = self
            .rows
            .iter()
            .copied()
            .chain(other.rows.iter().map(|&r| r << shift))
            .collect();
        Ok(Graph::from_rows(rows))
    }

    /// Apply a relabelling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.order();
        assert_eq!(perm.len(), n, "permutation length must equal the vertex count");
        let mut rows: Rows = smallvec::smallvec![0; n];
        for u in 0..n {
            let mut r = 0u64;
            for w in bits(self.rows[u]) {
                r |= 1 << perm[w];
            }
            rows[perm[u]] = r;
        }
        Graph::from_rows(rows)
    }

    #[inline]
    pub(crate) fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.insert_edge(u, v);
        g
    }

    #[inline]
    pub(crate) fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.rows[u] &= !(1 << v);
        g.rows[v] &= !(1 << u);
        g.edges -= 1;
        g
    }

    #[inline]
    fn insert_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        self.edges += 1;
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    fn is_consistent(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| {
            self.rows[u] >> u & 1 == 0
                && self.rows[u] & !full_mask(n) == 0
                && bits(self.rows[u]).all(|v| self.rows[v] >> u & 1 == 1)
        })
    }
}

impl Adjacency for Graph {
    #[inline]
    fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    fn size(&self) -> usize {
        self.edges
    }

    #[inline]
    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.rows[v])
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

/// Unbounded simple graph stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseGraph {
    adj: Vec<Vec<usize>>,
    edges: usize,
}

impl SparseGraph {
    pub fn empty(n: usize) -> Self {
        SparseGraph {
            adj: vec![Vec::new(); n],
            edges: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = SparseGraph::empty(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: w,
                    order: n,
                });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u, v)),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edges += 1;
                Ok(())
            }
        }
    }

    pub fn neighbor_slice(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Convert to the bit-set representation if it fits.
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let n = self.adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let rows = self
            .adj
            .iter()
            .map(|list| list.iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect();
        Ok(Graph::from_rows(rows))
    }
}

impl From<&Graph> for SparseGraph {
    fn from(g: &Graph) -> Self {
        SparseGraph {
            adj: (0..g.order()).map(|v| g.neighbors(v).collect()).collect(),
            edges: g.size(),
        }
    }
}

impl TryFrom<&SparseGraph> for Graph {
    type Error = GraphError;

    fn try_from(g: &SparseGraph) -> Result<Self, Self::Error> {
        g.to_graph()
    }
}

impl Adjacency for SparseGraph {
    fn order(&self) -> usize {
        self.adj.len()
    }

    fn size(&self) -> usize {
        self.edges
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }
}

impl fmt::Debug for SparseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseGraph(n={}, edges={:?})", self.order(), self.edges())
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate the set bits of a mask in increasing order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delete_vertex_drops_its_degree() {
        let c5 = Graph::cycle(5).unwrap();
        let p4 = c5.delete_vertex(2).unwrap();
        assert_eq!(p4.order(), 4);
        assert_eq!(p4.size(), 3);
        let k3 = Graph::complete(4).unwrap().delete_vertex(0).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
    }

    #[test]
    fn add_chord_to_c4_gives_k4_minus_edge() {
        let theta4 = Graph::cycle(4).unwrap().add_edge(0, 2).unwrap();
        assert_eq!(theta4.size(), 5);
        let mut degrees: Vec<_> = (0..4).map(|v| theta4.degree(v)).collect();
        degrees.sort();
        assert_eq!(degrees, vec![2, 2, 3, 3]);
    }

    #[test]
    fn editing_errors() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.add_edge(0, 1), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(c4.add_edge(2, 2), Err(GraphError::SelfLoop(2)));
        assert!(matches!(
            c4.add_edge(0, 9),
            Err(GraphError::VertexOutOfRange { vertex: 9, order: 4 })
        ));
        assert_eq!(c4.remove_edge(0, 2), Err(GraphError::MissingEdge(0, 2)));
        assert!(c4.delete_vertex(4).is_err());
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn sparse_round_trip() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 5), (5, 0), (3, 4)]).unwrap();
        let s = SparseGraph::from(&g);
        assert_eq!(s.edges(), g.edges());
        assert_eq!(s.to_graph().unwrap(), g);
        assert_eq!(SparseGraph::empty(70).to_graph(), Err(GraphError::TooManyVertices(70)));
    }

    #[test]
    fn induced_and_relabel() {
        let g = Graph::complete(5).unwrap().remove_edge(0, 1).unwrap();
        let h = g.induced(0b11100);
        assert_eq!(h, Graph::complete(3).unwrap());
        let r = g.relabel(&[4, 3, 2, 1, 0]);
        assert!(!r.has_edge(4, 3));
        assert_eq!(r.size(), 9);
    }
}
