//! Small simple graphs on at most 62 labelled vertices.
//!
//! Adjacency is one machine word per vertex, so every set operation used by
//! the matching and criticality code is a handful of bit instructions.

mod connectivity;
mod graph6;
pub mod named;
mod vertex_set;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use connectivity::Connectivity;
pub use graph6::{encode_graph6, parse_graph6, read_graph6_lines, Graph6Error, Graph6Line};
pub use vertex_set::{binomial, Combinations, Iter as VertexIter, VertexSet};

/// Largest order representable with single-word adjacency rows and the
/// short graph6 header.
pub const MAX_ORDER: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("edge {0}-{1} is not present")]
    EdgeAbsent(usize, usize),
    #[error("edge {0}-{1} is already present")]
    EdgePresent(usize, usize),
    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("operation needs order at least {min}, graph has {order}")]
    OrderTooSmall { order: usize, min: usize },
}

/// A simple undirected graph.
///
/// Order 0 is permitted so that deleting every vertex is well defined; all
/// other constructors produce graphs of order at least one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Result of an induced vertex deletion: the surviving graph plus the
/// order-preserving relabelling in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deletion {
    pub graph: Graph,
    pub new_to_old: Vec<usize>,
    pub old_to_new: Vec<Option<usize>>,
}

impl Deletion {
    pub fn to_old(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.new_to_old[v]).collect()
    }

    /// Maps a set of old indices; vertices that were deleted are dropped.
    pub fn to_new(&self, set: VertexSet) -> VertexSet {
        set.iter().filter_map(|v| self.old_to_new[v]).collect()
    }
}

/// Maximal connected blocks of a graph (or of an induced subgraph).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPartition {
    /// Ordered by smallest member.
    pub blocks: Vec<VertexSet>,
    pub odd_count: usize,
}

impl ComponentPartition {
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    pub fn odd_blocks(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.blocks.iter().copied().filter(|b| b.len() % 2 == 1)
    }

    pub fn even_blocks(&self) -> impl Iterator<Item = VertexSet> + '_ {
        self.blocks.iter().copied().filter(|b| b.len() % 2 == 0)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Degree value -> number of vertices having it.
pub type DegreeProfile = BTreeMap<usize, usize>;

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry, loops
    /// and range.
    pub fn from_adjacency(rows: &[u64]) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let full = VertexSet::full(n).bits();
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                let vertex = (row & !full).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex, order: n });
            }
            if (row >> u) & 1 == 1 {
                return Err(GraphError::Loop(u));
            }
            for v in VertexSet::from_bits(row) {
                if (rows[v] >> u) & 1 == 0 {
                    return Err(GraphError::EdgeAbsent(v, u));
                }
            }
        }
        Ok(Graph {
            n,
            adj: rows.to_vec(),
        })
    }

    #[inline]
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_adjacency(&rows).is_ok());
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v])
    }

    #[inline]
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::from_bits(self.adj[v]).with(v)
    }

    /// `V \ N[v]`.
    pub fn non_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.vertices() - self.closed_neighborhood(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet::from_bits(self.adj[u] & !((2u64 << u) - 1)).iter().map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut profile = DegreeProfile::new();
        for v in 0..self.n {
            *profile.entry(self.degree(v)).or_insert(0) += 1;
        }
        profile
    }

    pub fn vertices_of_degree(&self, d: usize) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == d).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        set.iter().all(|v| self.adj[v] & set.bits() == 0)
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn remove_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let mut g = self.clone();
        g.clear_edge(u, v);
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u, v));
        }
        let mut g = self.clone();
        g.set_edge(u, v);
        Ok(g)
    }

    /// `G - S`, relabelled order-preservingly.
    pub fn delete_vertices(&self, set: VertexSet) -> Result<Deletion, GraphError> {
        if let Some(v) = (set - self.vertices()).min() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            });
        }
        Ok(self.induced(self.vertices() - set))
    }

    /// `G[keep]`, relabelled order-preservingly. `keep` must lie inside the
    /// vertex set.
    pub fn induced(&self, keep: VertexSet) -> Deletion {
        let new_to_old: Vec<usize> = keep.iter().collect();
        let mut old_to_new = vec![None; self.n];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let rows = new_to_old
            .iter()
            .map(|&v| {
                VertexSet::from_bits(self.adj[v] & keep.bits())
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << old_to_new[w].unwrap())
            })
            .collect();
        Deletion {
            graph: Graph::from_rows_unchecked(rows),
            new_to_old,
            old_to_new,
        }
    }

    /// Applies `perm` (old index -> new index).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut rows = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u) {
                rows[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows_unchecked(rows)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices().bits();
        let rows = (0..self.n)
            .map(|v| full & !self.adj[v] & !(1 << v))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Connected blocks of `G[within]`, labelled with original indices.
    pub fn components_within(&self, within: VertexSet) -> ComponentPartition {
        let mut rest = within.bits();
        let mut blocks = Vec::new();
        let mut odd_count = 0;
        while rest != 0 {
            let block = self.reach(rest.trailing_zeros() as usize, rest);
            rest &= !block;
            if block.count_ones() % 2 == 1 {
                odd_count += 1;
            }
            blocks.push(VertexSet::from_bits(block));
        }
        ComponentPartition { blocks, odd_count }
    }

    pub fn components(&self) -> ComponentPartition {
        self.components_within(self.vertices())
    }

    /// Number of odd components of `G[within]`, without allocating.
    #[inline]
    pub fn odd_components_within(&self, within: VertexSet) -> usize {
        let mut rest = within.bits();
        let mut odd = 0;
        while rest != 0 {
            let block = self.reach(rest.trailing_zeros() as usize, rest);
            rest &= !block;
            odd += (block.count_ones() & 1) as usize;
        }
        odd
    }

    /// Vertices reachable from `start` inside `within`, as raw bits.
    #[inline]
    pub(crate) fn reach(&self, start: usize, within: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.adj[v] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertices().bits()).count_ones() as usize == self.n
    }

    /// True iff no vertex has three pairwise non-adjacent neighbours.
    pub fn is_claw_free(&self) -> bool {
        self.find_claw().is_none()
    }

    /// First induced `K_{1,3}` as `(centre, [a, b, c])`.
    pub fn find_claw(&self) -> Option<(usize, [usize; 3])> {
        for centre in 0..self.n {
            let nb = self.adj[centre];
            for a in VertexSet::from_bits(nb) {
                let after_a = nb & !self.adj[a] & !((2u64 << a) - 1);
                for b in VertexSet::from_bits(after_a) {
                    let third = after_a & !self.adj[b] & !((2u64 << b) - 1);
                    if third != 0 {
                        return Some((centre, [a, b, third.trailing_zeros() as usize]));
                    }
                }
            }
        }
        None
    }

    pub fn connectivity(&self) -> Result<Connectivity, GraphError> {
        connectivity::connectivity(self)
    }

    /// Disjoint union, `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut rows = self.adj.clone();
        rows.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph::from_rows_unchecked(rows))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", encode_graph6(self), self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode_graph6(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&encode_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_graph6(text.as_bytes()).map_err(serde::de::Error::custom)
    }
}
