use super::{CsrGraph, Edge, GraphError, VertexId, Weight};

/// Read access to out-adjacency, shared by the immutable composed views and
/// the mutable graph of the streaming baseline.
pub trait OutAdjacency {
    fn vertex_count(&self) -> usize;

    fn edge_count(&self) -> usize;

    fn for_each_out<F: FnMut(VertexId, Weight)>(&self, v: VertexId, f: F);
}

impl OutAdjacency for CsrGraph {
    fn vertex_count(&self) -> usize {
        CsrGraph::vertex_count(self)
    }

    fn edge_count(&self) -> usize {
        CsrGraph::edge_count(self)
    }

    #[inline]
    fn for_each_out<F: FnMut(VertexId, Weight)>(&self, v: VertexId, mut f: F) {
        for &(d, w) in self.neighbors(v) {
            f(d, w);
        }
    }
}

/// A base graph with addition-only overlays stacked on top.
///
/// The view borrows every layer and never writes to any of them. Each
/// `(src, dst)` pair lives in exactly one layer, so iterating the
/// neighbors of `v` yields the disjoint union of the layers' adjacencies.
#[derive(Debug, Clone)]
pub struct ComposedGraphView<'a> {
    base: &'a CsrGraph,
    overlays: Vec<&'a CsrGraph>,
}

/// Stacks `overlays` on `base`, checking that no pair appears twice.
pub fn compose<'a>(
    base: &'a CsrGraph,
    overlays: &[&'a CsrGraph],
) -> Result<ComposedGraphView<'a>, GraphError> {
    let mut view = ComposedGraphView::new(base);
    for &o in overlays {
        view = view.with_overlay(o)?;
    }
    Ok(view)
}

impl<'a> ComposedGraphView<'a> {
    pub fn new(base: &'a CsrGraph) -> Self {
        ComposedGraphView { base, overlays: Vec::new() }
    }

    /// A new view with `overlay` appended; `self` is left untouched.
    pub fn with_overlay(&self, overlay: &'a CsrGraph) -> Result<ComposedGraphView<'a>, GraphError> {
        if overlay.vertex_count() != self.base.vertex_count() {
            let vertex = overlay.vertex_count().saturating_sub(1) as VertexId;
            return Err(GraphError::VertexOutOfRange { vertex, vertex_count: self.base.vertex_count() });
        }
        if let Some(e) = overlay.edges().find(|e| self.contains_edge(e.src, e.dst)) {
            return Err(GraphError::OverlapError(e.src, e.dst));
        }
        let mut overlays = self.overlays.clone();
        overlays.push(overlay);
        Ok(ComposedGraphView { base: self.base, overlays })
    }

    pub fn base(&self) -> &'a CsrGraph {
        self.base
    }

    pub fn overlays(&self) -> &[&'a CsrGraph] {
        &self.overlays
    }

    pub fn layers(&self) -> impl Iterator<Item = &'a CsrGraph> + '_ {
        std::iter::once(self.base).chain(self.overlays.iter().copied())
    }

    /// `|base| + Σ |overlay|`, which is the size of the union since layers are disjoint.
    pub fn edge_count(&self) -> usize {
        self.layers().map(CsrGraph::edge_count).sum()
    }

    pub fn contains_edge(&self, src: VertexId, dst: VertexId) -> bool {
        self.layers().any(|g| g.contains_edge(src, dst))
    }

    /// Out-neighbors of `v`: base first, then each overlay in order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, Weight)> + '_ {
        self.layers().flat_map(move |g| g.neighbors(v).iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.layers().flat_map(CsrGraph::edges)
    }

    pub fn checksums(&self) -> Vec<u64> {
        self.layers().map(CsrGraph::checksum).collect()
    }
}

pub fn edge_count(view: &ComposedGraphView<'_>) -> usize {
    view.edge_count()
}

impl OutAdjacency for ComposedGraphView<'_> {
    fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    fn edge_count(&self) -> usize {
        ComposedGraphView::edge_count(self)
    }

    #[inline]
    fn for_each_out<F: FnMut(VertexId, Weight)>(&self, v: VertexId, mut f: F) {
        for &(d, w) in self.base.neighbors(v) {
            f(d, w);
        }
        for o in &self.overlays {
            for &(d, w) in o.neighbors(v) {
                f(d, w);
            }
        }
    }
}
