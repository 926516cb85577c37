//! Immutable graph representations.
//!
//! Edges are identified by their `(src, dst)` pair: a graph or batch holds at
//! most one edge per ordered pair, and weights ride along as payload. Set
//! operations on [`EdgeSet`] therefore compare pairs only.

mod compose;
mod csr;
pub mod edge_list;

use std::collections::btree_map;
use std::collections::BTreeMap;

use thiserror::Error;

pub use compose::{compose, edge_count, ComposedGraphView, OutAdjacency};
pub use csr::{build_csr, CsrGraph};

/// Dense vertex index in `[0, V)`.
pub type VertexId = u32;

/// Edge weight. Always strictly positive.
pub type Weight = f64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: VertexId, vertex_count: usize },
    #[error("edge ({src}, {dst}) has non-positive or non-finite weight {weight}")]
    InvalidWeight { src: VertexId, dst: VertexId, weight: Weight },
    #[error("edge ({0}, {1}) appears in more than one composed layer")]
    OverlapError(VertexId, VertexId),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: Weight,
}

impl Edge {
    pub fn new(src: VertexId, dst: VertexId, weight: Weight) -> Self {
        Edge { src, dst, weight }
    }

    pub fn key(&self) -> (VertexId, VertexId) {
        (self.src, self.dst)
    }
}

/// A set of edges deduplicated by `(src, dst)`, iterated in `(src, dst)` order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeSet {
    edges: BTreeMap<(VertexId, VertexId), Weight>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set, rejecting repeated `(src, dst)` pairs and non-positive weights.
    pub fn try_from_edges<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Self, GraphError> {
        let mut set = EdgeSet::new();
        for e in edges {
            set.insert(e)?;
        }
        Ok(set)
    }

    /// Inserts an edge; fails if the pair is already present.
    pub fn insert(&mut self, edge: Edge) -> Result<(), GraphError> {
        if !(edge.weight > 0.0 && edge.weight.is_finite()) {
            return Err(GraphError::InvalidWeight {
                src: edge.src,
                dst: edge.dst,
                weight: edge.weight,
            });
        }
        match self.edges.entry(edge.key()) {
            btree_map::Entry::Occupied(_) => Err(GraphError::DuplicateEdge(edge.src, edge.dst)),
            btree_map::Entry::Vacant(slot) => {
                slot.insert(edge.weight);
                Ok(())
            }
        }
    }

    pub fn remove(&mut self, src: VertexId, dst: VertexId) -> Option<Weight> {
        self.edges.remove(&(src, dst))
    }

    pub fn contains(&self, src: VertexId, dst: VertexId) -> bool {
        self.edges.contains_key(&(src, dst))
    }

    pub fn weight(&self, src: VertexId, dst: VertexId) -> Option<Weight> {
        self.edges.get(&(src, dst)).copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(src, dst), &weight)| Edge { src, dst, weight })
    }

    pub fn keys(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.keys().copied()
    }

    /// Largest endpoint id, if any.
    pub fn max_vertex(&self) -> Option<VertexId> {
        self.edges.keys().map(|&(s, d)| s.max(d)).max()
    }

    /// Edges of `self` whose pair is absent from `other`.
    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        let edges = self
            .edges
            .iter()
            .filter(|(k, _)| !other.edges.contains_key(k))
            .map(|(&k, &w)| (k, w))
            .collect();
        EdgeSet { edges }
    }

    /// Edges of `self` whose pair is also in `other` (weights taken from `self`).
    pub fn intersection(&self, other: &EdgeSet) -> EdgeSet {
        let edges = self
            .edges
            .iter()
            .filter(|(k, _)| other.edges.contains_key(k))
            .map(|(&k, &w)| (k, w))
            .collect();
        EdgeSet { edges }
    }

    /// Union by pair; on a shared pair the weight from `self` wins.
    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        let mut edges = other.edges.clone();
        edges.extend(self.edges.iter().map(|(&k, &w)| (k, w)));
        EdgeSet { edges }
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.edges.keys().all(|k| !large.edges.contains_key(k))
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.keys().all(|k| other.edges.contains_key(k))
    }

    /// Same pairs, ignoring weights.
    pub fn same_pairs(&self, other: &EdgeSet) -> bool {
        self.len() == other.len() && self.is_subset(other)
    }
}

impl FromIterator<Edge> for EdgeSet {
    /// Collects edges; a later duplicate pair overwrites the earlier one.
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet {
            edges: iter.into_iter().map(|e| (e.key(), e.weight)).collect(),
        }
    }
}
