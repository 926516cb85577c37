use super::scheduler::Scheduler;
use super::{check_weights, EngineError, SchedulerPolicy, VertexProgram, VertexValues, WorkStats};
use crate::graph::{ComposedGraphView, CsrGraph, OutAdjacency, VertexId};

pub(crate) fn check_source(source: VertexId, vertex_count: usize) -> Result<(), EngineError> {
    if (source as usize) < vertex_count {
        Ok(())
    } else {
        Err(EngineError::SourceOutOfRange { source_vertex: source, vertex_count })
    }
}

/// Runs `prog` from `source` to its fixed point, optionally recording
/// dependence parents. The caller has validated weights.
pub(crate) fn fixed_point<G, P>(
    graph: &G,
    prog: &P,
    source: VertexId,
    policy: &SchedulerPolicy,
    track_parents: bool,
) -> Result<(VertexValues, WorkStats), EngineError>
where
    G: OutAdjacency,
    P: VertexProgram + ?Sized,
{
    check_source(source, graph.vertex_count())?;
    let mut values = VertexValues::initial(prog, graph.vertex_count(), source, track_parents);
    let mut stats = WorkStats::default();
    let mut sched = Scheduler::new(policy.mode_for(1), graph.vertex_count());
    sched.schedule(source);
    sched.drain(graph, prog, &mut values, &mut stats, policy)?;
    Ok((values, stats))
}

/// From-scratch evaluation of `prog` on `view`.
pub fn evaluate_full<P: VertexProgram + ?Sized>(
    view: &ComposedGraphView<'_>,
    prog: &P,
    source: VertexId,
    policy: &SchedulerPolicy,
) -> Result<(VertexValues, WorkStats), EngineError> {
    check_weights(prog, view.edges())?;
    fixed_point(view, prog, source, policy, false)
}

/// Extends the fixed point `values` on `view` to `view + batch`.
///
/// Every batch edge is relaxed once and improved destinations are
/// scheduled; the scheduler then pushes along the composed adjacency until
/// nothing improves. Neither `view` nor `batch` is written to. Returns the
/// composed view the new fixed point belongs to.
pub fn incremental_add<'a, P: VertexProgram + ?Sized>(
    values: &mut VertexValues,
    view: &ComposedGraphView<'a>,
    batch: &'a CsrGraph,
    prog: &P,
    policy: &SchedulerPolicy,
) -> Result<(ComposedGraphView<'a>, WorkStats), EngineError> {
    check_weights(prog, batch.edges())?;
    let composed = view.with_overlay(batch)?;
    let mut stats = WorkStats::default();
    let mut sched = Scheduler::new(policy.mode_for(batch.edge_count()), composed.vertex_count());
    for e in batch.edges() {
        sched.relax(prog, values, &mut stats, e.src, e.dst, e.weight);
    }
    sched.drain(&composed, prog, values, &mut stats, policy)?;
    Ok((composed, stats))
}
