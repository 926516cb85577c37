use std::hash::{DefaultHasher, Hasher};

use super::{Edge, EdgeSet, GraphError, VertexId, Weight};

/// Compressed sparse row adjacency of a directed weighted graph.
///
/// Out-neighbors of `v` live in `targets[offsets[v]..offsets[v + 1]]`,
/// sorted by destination. Sorting makes the layout canonical: two builds of
/// the same edge set are bit-identical.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrGraph {
    vertex_count: usize,
    offsets: Vec<usize>,
    targets: Vec<(VertexId, Weight)>,
}

/// Builds the canonical CSR of `edges` over `vertex_count` vertices.
///
/// `EdgeSet` already guarantees unique pairs; use [`CsrGraph::from_edges`]
/// for unchecked edge streams.
pub fn build_csr(edges: &EdgeSet, vertex_count: usize) -> Result<CsrGraph, GraphError> {
    CsrGraph::from_edges(edges.iter(), vertex_count)
}

impl CsrGraph {
    pub fn empty(vertex_count: usize) -> Self {
        CsrGraph {
            vertex_count,
            offsets: vec![0; vertex_count + 1],
            targets: Vec::new(),
        }
    }

    /// Builds from an arbitrary edge stream, rejecting repeated pairs and
    /// out-of-range endpoints.
    pub fn from_edges<I>(edges: I, vertex_count: usize) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut list: Vec<Edge> = edges.into_iter().collect();
        for e in &list {
            for v in [e.src, e.dst] {
                if v as usize >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count });
                }
            }
        }
        list.sort_unstable_by_key(Edge::key);
        if let Some(w) = list.windows(2).find(|w| w[0].key() == w[1].key()) {
            return Err(GraphError::DuplicateEdge(w[0].src, w[0].dst));
        }

        let mut offsets = vec![0usize; vertex_count + 1];
        for e in &list {
            offsets[e.src as usize + 1] += 1;
        }
        for v in 0..vertex_count {
            offsets[v + 1] += offsets[v];
        }
        let targets = list.iter().map(|e| (e.dst, e.weight)).collect();
        Ok(CsrGraph { vertex_count, offsets, targets })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn targets(&self) -> &[(VertexId, Weight)] {
        &self.targets
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, Weight)] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn contains_edge(&self, src: VertexId, dst: VertexId) -> bool {
        (src as usize) < self.vertex_count
            && self.neighbors(src).binary_search_by_key(&dst, |&(d, _)| d).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.vertex_count as VertexId).flat_map(move |src| {
            self.neighbors(src).iter().map(move |&(dst, weight)| Edge { src, dst, weight })
        })
    }

    pub fn to_edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    /// Hash over the raw array contents; used to detect mutation.
    pub fn checksum(&self) -> u64 {
        let mut h = DefaultHasher::new();
        h.write_usize(self.vertex_count);
        for &o in &self.offsets {
            h.write_usize(o);
        }
        for &(d, w) in &self.targets {
            h.write_u32(d);
            h.write_u64(w.to_bits());
        }
        h.finish()
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn empty_graph_offsets() {
        let g = build_csr(&EdgeSet::new(), 3).unwrap();
        assert_eq!(g.offsets(), &[0, 0, 0, 0]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn small_graph_layout() {
        let edges = EdgeSet::try_from_edges([
            Edge::new(2, 1, 5.0),
            Edge::new(0, 2, 2.0),
            Edge::new(0, 1, 1.0),
        ])
        .unwrap();
        let g = build_csr(&edges, 3).unwrap();
        assert_eq!(g.offsets(), &[0, 2, 2, 3]);
        assert_eq!(g.targets(), &[(1, 1.0), (2, 2.0), (1, 5.0)]);
        assert!(g.contains_edge(2, 1));
        assert!(!g.contains_edge(1, 2));
    }

    #[test]
    fn rejects_bad_input() {
        let dup = [Edge::new(0, 1, 1.0), Edge::new(0, 1, 1.0)];
        assert_eq!(CsrGraph::from_edges(dup, 2), Err(GraphError::DuplicateEdge(0, 1)));
        let oob = [Edge::new(0, 3, 1.0)];
        assert_eq!(
            CsrGraph::from_edges(oob, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, vertex_count: 3 })
        );
    }

    #[test]
    fn random_round_trip_against_adjacency_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut naive: BTreeMap<u32, BTreeMap<u32, f64>> = BTreeMap::new();
        let mut set = EdgeSet::new();
        while set.len() < 100 {
            let (s, d) = (rng.gen_range(0..50), rng.gen_range(0..50));
            let w = rng.gen_range(1..10) as f64;
            if set.insert(Edge::new(s, d, w)).is_ok() {
                naive.entry(s).or_default().insert(d, w);
            }
        }
        let g = build_csr(&set, 50).unwrap();
        assert_eq!(g.edge_count(), 100);
        for v in 0..50u32 {
            let expected: Vec<(u32, f64)> = naive
                .get(&v)
                .map(|m| m.iter().map(|(&d, &w)| (d, w)).collect())
                .unwrap_or_default();
            assert_eq!(g.neighbors(v), expected.as_slice());
        }
    }

    proptest! {
        #[test]
        fn build_is_canonical_and_round_trips(pairs in proptest::collection::btree_set((0u32..30, 0u32..30), 0..120)) {
            let set: EdgeSet = pairs.iter().map(|&(s, d)| Edge::new(s, d, (s + d + 1) as f64)).collect();
            let a = build_csr(&set, 30).unwrap();
            let mut shuffled: Vec<Edge> = set.iter().collect();
            shuffled.reverse();
            let b = CsrGraph::from_edges(shuffled, 30).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.checksum(), b.checksum());
            prop_assert_eq!(a.to_edge_set(), set);
            prop_assert_eq!(a.offsets()[0], 0);
            prop_assert_eq!(a.offsets()[30], a.edge_count());
            prop_assert!(a.offsets().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
