//! Streaming baseline: one mutable graph walked snapshot by snapshot.
//!
//! Deletions are handled by dependence trimming. Each vertex remembers the
//! in-neighbor its value came from; deleting that edge invalidates the
//! vertex and, transitively, every vertex whose value was derived from it.
//! Invalidated vertices are reset to the identity, re-relaxed from their
//! valid in-neighbors, and the scheduler drains from there. Deletions are
//! applied before additions within a step.

use std::time::{Duration, Instant};

use super::evaluate::{check_source, fixed_point};
use super::scheduler::Scheduler;
use super::{check_weights, EngineError, SchedulerPolicy, VertexProgram, VertexValues, WorkStats, NO_PARENT};
use crate::graph::{Edge, EdgeSet, GraphError, OutAdjacency, VertexId, Weight};
use crate::store::{DeltaBatch, StoreError};

/// Adjacency lists in both directions, mutated in place.
#[derive(Debug, Clone)]
pub struct DynamicGraph {
    out: Vec<Vec<(VertexId, Weight)>>,
    inc: Vec<Vec<(VertexId, Weight)>>,
    edge_count: usize,
}

impl DynamicGraph {
    pub fn new(vertex_count: usize) -> Self {
        DynamicGraph { out: vec![Vec::new(); vertex_count], inc: vec![Vec::new(); vertex_count], edge_count: 0 }
    }

    pub fn from_edges(edges: &EdgeSet, vertex_count: usize) -> Result<Self, StoreError> {
        let mut g = DynamicGraph::new(vertex_count);
        for e in edges.iter() {
            g.insert(e)?;
        }
        Ok(g)
    }

    pub fn contains(&self, src: VertexId, dst: VertexId) -> bool {
        self.out.get(src as usize).is_some_and(|n| n.iter().any(|&(d, _)| d == dst))
    }

    pub fn insert(&mut self, e: Edge) -> Result<(), StoreError> {
        for v in [e.src, e.dst] {
            if v as usize >= self.out.len() {
                return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: self.out.len() }.into());
            }
        }
        if self.contains(e.src, e.dst) {
            return Err(StoreError::AddExistingEdge(e.src, e.dst));
        }
        self.out[e.src as usize].push((e.dst, e.weight));
        self.inc[e.dst as usize].push((e.src, e.weight));
        self.edge_count += 1;
        Ok(())
    }

    pub fn remove(&mut self, src: VertexId, dst: VertexId) -> Result<Weight, StoreError> {
        let missing = || StoreError::DeleteMissingEdge(src, dst);
        let out = self.out.get_mut(src as usize).ok_or_else(missing)?;
        let k = out.iter().position(|&(d, _)| d == dst).ok_or_else(missing)?;
        let (_, w) = out.swap_remove(k);
        let inc = &mut self.inc[dst as usize];
        let k = inc.iter().position(|&(s, _)| s == src).expect("in-list mirrors out-list");
        inc.swap_remove(k);
        self.edge_count -= 1;
        Ok(w)
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[(VertexId, Weight)] {
        &self.inc[v as usize]
    }

    pub fn to_edge_set(&self) -> EdgeSet {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, n)| n.iter().map(move |&(d, w)| Edge::new(s as VertexId, d, w)))
            .collect()
    }
}

impl OutAdjacency for DynamicGraph {
    fn vertex_count(&self) -> usize {
        self.out.len()
    }

    fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    fn for_each_out<F: FnMut(VertexId, Weight)>(&self, v: VertexId, mut f: F) {
        for &(d, w) in &self.out[v as usize] {
            f(d, w);
        }
    }
}

/// Time and work of one streaming step.
#[derive(Debug, Clone, Copy, Default)]
pub struct StreamStepReport {
    /// Editing the adjacency lists (deletions and additions).
    pub mutation: Duration,
    /// Trimming and recomputation after deletions.
    pub deletion: Duration,
    /// Incremental propagation of additions.
    pub addition: Duration,
    pub deletion_stats: WorkStats,
    pub addition_stats: WorkStats,
}

/// Applies `batch` to `graph` and brings `values` to the new fixed point.
///
/// `values` must be a fixed point on `graph` with dependence parents.
pub fn baseline_stream_step<P: VertexProgram + ?Sized>(
    graph: &mut DynamicGraph,
    values: &mut VertexValues,
    batch: &DeltaBatch,
    prog: &P,
    policy: &SchedulerPolicy,
) -> Result<StreamStepReport, EngineError> {
    if values.dependence_parent.is_none() {
        return Err(EngineError::MissingDependenceTracking);
    }
    for (s, d) in batch.deletions.keys() {
        if batch.additions.contains(s, d) {
            return Err(StoreError::AddDeleteConflict(s, d).into());
        }
        if !graph.contains(s, d) {
            return Err(StoreError::DeleteMissingEdge(s, d).into());
        }
    }
    if let Some((s, d)) = batch.additions.keys().find(|&(s, d)| graph.contains(s, d)) {
        return Err(StoreError::AddExistingEdge(s, d).into());
    }
    check_weights(prog, batch.additions.iter())?;

    let mut report = StreamStepReport::default();

    let t = Instant::now();
    for (s, d) in batch.deletions.keys() {
        graph.remove(s, d)?;
    }
    report.mutation += t.elapsed();

    let t = Instant::now();
    report.deletion_stats = trim_and_recompute(graph, values, batch, prog, policy)?;
    report.deletion = t.elapsed();

    let t = Instant::now();
    for e in batch.additions.iter() {
        graph.insert(e)?;
    }
    report.mutation += t.elapsed();

    let t = Instant::now();
    let mut stats = WorkStats::default();
    let mut sched = Scheduler::new(policy.mode_for(batch.additions.len()), graph.vertex_count());
    for e in batch.additions.iter() {
        sched.relax(prog, values, &mut stats, e.src, e.dst, e.weight);
    }
    sched.drain(&*graph, prog, values, &mut stats, policy)?;
    report.addition_stats = stats;
    report.addition = t.elapsed();
    Ok(report)
}

/// Invalidates values derived through deleted edges, then recomputes them.
/// `graph` already lacks the deleted edges.
fn trim_and_recompute<P: VertexProgram + ?Sized>(
    graph: &DynamicGraph,
    values: &mut VertexValues,
    batch: &DeltaBatch,
    prog: &P,
    policy: &SchedulerPolicy,
) -> Result<WorkStats, EngineError> {
    let n = graph.vertex_count();
    let parent = values.dependence_parent.as_ref().expect("checked by caller");
    let mut tainted = vec![false; n];
    let mut order: Vec<VertexId> = Vec::new();
    for (s, d) in batch.deletions.keys() {
        if parent[d as usize] == s && !tainted[d as usize] {
            tainted[d as usize] = true;
            order.push(d);
        }
    }
    // dependence children are out-neighbors whose parent is the tainted vertex
    let mut k = 0;
    while k < order.len() {
        let w = order[k];
        graph.for_each_out(w, |x, _| {
            if parent[x as usize] == w && !tainted[x as usize] {
                tainted[x as usize] = true;
                order.push(x);
            }
        });
        k += 1;
    }

    let mut stats = WorkStats { tainted: order.len() as u64, ..Default::default() };
    if order.is_empty() {
        return Ok(stats);
    }
    for &v in &order {
        values.set(v, prog.identity(), NO_PARENT);
    }
    let mut sched = Scheduler::new(policy.mode_for(order.len()), n);
    for &v in &order {
        for &(u, w) in graph.in_neighbors(v) {
            if !tainted[u as usize] {
                sched.relax(prog, values, &mut stats, u, v, w);
            }
        }
    }
    sched.drain(graph, prog, values, &mut stats, policy)?;
    Ok(stats)
}

/// A streaming engine positioned at some snapshot.
#[derive(Debug, Clone)]
pub struct BaselineEngine<P> {
    graph: DynamicGraph,
    values: VertexValues,
    prog: P,
    policy: SchedulerPolicy,
}

impl<P: VertexProgram> BaselineEngine<P> {
    /// Loads `edges` and evaluates from scratch. Returns the engine and the
    /// work of the initial evaluation.
    pub fn new(
        edges: &EdgeSet,
        vertex_count: usize,
        prog: P,
        source: VertexId,
        policy: SchedulerPolicy,
    ) -> Result<(Self, WorkStats), EngineError> {
        check_source(source, vertex_count)?;
        check_weights(&prog, edges.iter())?;
        let graph = DynamicGraph::from_edges(edges, vertex_count)?;
        let (values, stats) = fixed_point(&graph, &prog, source, &policy, true)?;
        Ok((BaselineEngine { graph, values, prog, policy }, stats))
    }

    pub fn step(&mut self, batch: &DeltaBatch) -> Result<StreamStepReport, EngineError> {
        baseline_stream_step(&mut self.graph, &mut self.values, batch, &self.prog, &self.policy)
    }

    pub fn values(&self) -> &VertexValues {
        &self.values
    }

    pub fn graph(&self) -> &DynamicGraph {
        &self.graph
    }
}
