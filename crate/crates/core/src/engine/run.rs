use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{evaluate_full, incremental_add, EngineError, SchedulerPolicy, VertexProgram, VertexValues, WorkStats};
use crate::graph::{build_csr, ComposedGraphView, CsrGraph, VertexId};
use crate::store::{EvolvingGraphStore, Interval, SnapshotId};
use crate::trigrid::{EvaluationSchedule, ScheduleNode};

/// A schedule with its common graph and every batch built as CSR.
#[derive(Debug)]
pub struct PreparedSchedule {
    pub window: Interval,
    pub common: CsrGraph,
    nodes: Vec<PreparedNode>,
}

#[derive(Debug)]
struct PreparedNode {
    interval: Interval,
    first_leaf: SnapshotId,
    overlay: Option<CsrGraph>,
    children: Vec<usize>,
}

impl PreparedSchedule {
    /// Overlay CSRs in pre-order (the root has none).
    pub fn overlays(&self) -> impl Iterator<Item = &CsrGraph> {
        self.nodes.iter().filter_map(|n| n.overlay.as_ref())
    }

    /// Checksums of the common graph followed by every overlay.
    pub fn checksums(&self) -> Vec<u64> {
        std::iter::once(&self.common).chain(self.overlays()).map(CsrGraph::checksum).collect()
    }
}

/// Builds the CSR of the window's common graph and of every batch of a
/// materialized schedule.
pub fn prepare_schedule(
    store: &EvolvingGraphStore,
    schedule: &EvaluationSchedule,
) -> Result<PreparedSchedule, EngineError> {
    fn flatten(node: &ScheduleNode, v: usize, out: &mut Vec<PreparedNode>) -> Result<usize, EngineError> {
        let overlay = match (&node.incoming, &node.batch) {
            (None, _) => None,
            (Some(_), Some(batch)) => Some(build_csr(batch, v)?),
            (Some(_), None) => return Err(EngineError::UnmaterializedBatch(node.interval.to_string())),
        };
        let id = out.len();
        out.push(PreparedNode { interval: node.interval, first_leaf: node.first_leaf(), overlay, children: Vec::new() });
        for c in &node.children {
            let child = flatten(c, v, out)?;
            out[id].children.push(child);
        }
        Ok(id)
    }
    let window = schedule.window();
    let v = store.vertex_count();
    let common = build_csr(&store.common_edges(window)?, v)?;
    let mut nodes = Vec::new();
    flatten(&schedule.root, v, &mut nodes)?;
    Ok(PreparedSchedule { window, common, nodes })
}

/// Time and work of one schedule node: the root evaluation or one incremental batch.
#[derive(Debug, Clone, Copy)]
pub struct StepReport {
    pub interval: Interval,
    /// Smallest snapshot below the node; used to attribute shared work.
    pub first_leaf: SnapshotId,
    pub batch_size: usize,
    pub elapsed: Duration,
    pub stats: WorkStats,
}

#[derive(Debug)]
pub struct ScheduleRun {
    pub results: BTreeMap<SnapshotId, VertexValues>,
    /// The root evaluation on the common graph.
    pub initial: StepReport,
    /// One entry per schedule edge, in pre-order.
    pub steps: Vec<StepReport>,
}

type Partial = (Vec<(SnapshotId, VertexValues)>, Vec<(usize, StepReport)>);

fn run_subtree<P: VertexProgram + ?Sized>(
    prepared: &PreparedSchedule,
    id: usize,
    view: &ComposedGraphView<'_>,
    values: VertexValues,
    prog: &P,
    policy: &SchedulerPolicy,
    parallel: bool,
) -> Result<Partial, EngineError> {
    let node = &prepared.nodes[id];
    if node.children.is_empty() {
        return Ok((vec![(node.interval.lo, values)], Vec::new()));
    }
    let child = |&c: &usize, mut values: VertexValues| -> Result<Partial, EngineError> {
        let cn = &prepared.nodes[c];
        let overlay = cn.overlay.as_ref().expect("non-root nodes carry an overlay");
        let t = Instant::now();
        let (child_view, stats) = incremental_add(&mut values, view, overlay, prog, policy)?;
        let report = StepReport {
            interval: cn.interval,
            first_leaf: cn.first_leaf,
            batch_size: overlay.edge_count(),
            elapsed: t.elapsed(),
            stats,
        };
        let (results, mut steps) = run_subtree(prepared, c, &child_view, values, prog, policy, parallel)?;
        steps.insert(0, (c, report));
        Ok((results, steps))
    };
    let parts: Vec<Partial> = if parallel && node.children.len() > 1 {
        node.children.par_iter().map(|c| child(c, values.clone())).collect::<Result<_, _>>()?
    } else {
        // the last child can take the parent's values instead of a copy
        let mut values = Some(values);
        let last = node.children.len() - 1;
        node.children
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let v = if k == last { values.take().expect("moved once") } else { values.clone().expect("present") };
                child(c, v)
            })
            .collect::<Result<_, _>>()?
    };
    Ok(parts.into_iter().fold((Vec::new(), Vec::new()), |mut acc, (r, s)| {
        acc.0.extend(r);
        acc.1.extend(s);
        acc
    }))
}

/// Evaluates a prepared schedule: from scratch on the common graph, then one
/// incremental batch per schedule edge, each child starting from its own
/// copy of the parent's fixed point. Sibling subtrees run on the rayon pool
/// when `parallel` is set.
pub fn run_prepared<P: VertexProgram + ?Sized>(
    prepared: &PreparedSchedule,
    prog: &P,
    source: VertexId,
    policy: &SchedulerPolicy,
    parallel: bool,
) -> Result<ScheduleRun, EngineError> {
    let view = ComposedGraphView::new(&prepared.common);
    let t = Instant::now();
    let (values, stats) = evaluate_full(&view, prog, source, policy)?;
    let initial = StepReport {
        interval: prepared.window,
        first_leaf: prepared.window.lo,
        batch_size: 0,
        elapsed: t.elapsed(),
        stats,
    };
    let (results, mut steps) = run_subtree(prepared, 0, &view, values, prog, policy, parallel)?;
    steps.sort_by_key(|&(id, _)| id);
    Ok(ScheduleRun {
        results: results.into_iter().collect(),
        initial,
        steps: steps.into_iter().map(|(_, s)| s).collect(),
    })
}

/// [`prepare_schedule`] followed by [`run_prepared`].
pub fn run_schedule<P: VertexProgram + ?Sized>(
    store: &EvolvingGraphStore,
    schedule: &EvaluationSchedule,
    prog: &P,
    source: VertexId,
    policy: &SchedulerPolicy,
) -> Result<BTreeMap<SnapshotId, VertexValues>, EngineError> {
    let prepared = prepare_schedule(store, schedule)?;
    Ok(run_prepared(&prepared, prog, source, policy, false)?.results)
}
