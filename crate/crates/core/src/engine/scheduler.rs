use std::collections::VecDeque;

use super::{EngineError, VertexProgram, VertexValues, WorkStats};
use crate::graph::{OutAdjacency, VertexId};

/// Batches of at least this many edges are drained synchronously.
pub const DEFAULT_MODE_THRESHOLD: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchedulerMode {
    /// Rounds over a frontier; vertices improved in a round form the next one.
    Synchronous,
    /// A single FIFO worklist; improvements are propagated as soon as popped.
    Asynchronous,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchedulerPolicy {
    /// Batch size at which drains switch from asynchronous to synchronous.
    pub mode_threshold: usize,
    /// Overrides the threshold when set.
    pub force: Option<SchedulerMode>,
    /// Upper bound on accepted updates before giving up; `None` derives
    /// `(V + 1) * (E + 1)` from the graph.
    pub max_updates: Option<u64>,
}

impl Default for SchedulerPolicy {
    fn default() -> Self {
        SchedulerPolicy { mode_threshold: DEFAULT_MODE_THRESHOLD, force: None, max_updates: None }
    }
}

impl SchedulerPolicy {
    pub fn forced(mode: SchedulerMode) -> Self {
        SchedulerPolicy { force: Some(mode), ..Default::default() }
    }

    pub fn mode_for(&self, batch_len: usize) -> SchedulerMode {
        self.force.unwrap_or(if batch_len < self.mode_threshold {
            SchedulerMode::Asynchronous
        } else {
            SchedulerMode::Synchronous
        })
    }

    fn update_limit<G: OutAdjacency>(&self, graph: &G) -> u64 {
        self.max_updates
            .unwrap_or_else(|| (graph.vertex_count() as u64 + 1).saturating_mul(graph.edge_count() as u64 + 1))
    }
}

/// Pending vertices. A vertex is queued at most once at a time.
pub(crate) struct Scheduler {
    mode: SchedulerMode,
    queue: VecDeque<VertexId>,
    queued: Vec<bool>,
}

impl Scheduler {
    pub(crate) fn new(mode: SchedulerMode, vertex_count: usize) -> Self {
        Scheduler { mode, queue: VecDeque::new(), queued: vec![false; vertex_count] }
    }

    #[inline]
    pub(crate) fn schedule(&mut self, v: VertexId) {
        if !std::mem::replace(&mut self.queued[v as usize], true) {
            self.queue.push_back(v);
        }
    }

    /// Applies `prog` to `(u, v, weight)`, accepting strict improvements.
    #[inline]
    pub(crate) fn relax<P: VertexProgram + ?Sized>(
        &mut self,
        prog: &P,
        values: &mut VertexValues,
        stats: &mut WorkStats,
        u: VertexId,
        v: VertexId,
        weight: f64,
    ) {
        stats.edge_fn_applications += 1;
        let candidate = prog.edge_function(values.values[u as usize], weight);
        if prog.better(candidate, values.values[v as usize]) {
            values.set(v, candidate, u);
            stats.improvements += 1;
            self.schedule(v);
        }
    }

    /// Pushes from scheduled vertices until nothing improves.
    pub(crate) fn drain<G, P>(
        &mut self,
        graph: &G,
        prog: &P,
        values: &mut VertexValues,
        stats: &mut WorkStats,
        policy: &SchedulerPolicy,
    ) -> Result<(), EngineError>
    where
        G: OutAdjacency,
        P: VertexProgram + ?Sized,
    {
        let limit = policy.update_limit(graph);
        let start = stats.improvements;
        match self.mode {
            SchedulerMode::Asynchronous => {
                while let Some(u) = self.queue.pop_front() {
                    self.queued[u as usize] = false;
                    graph.for_each_out(u, |v, w| self.relax(prog, values, stats, u, v, w));
                    if stats.improvements - start > limit {
                        return Err(EngineError::NonConvergence { updates: stats.improvements - start });
                    }
                }
            }
            SchedulerMode::Synchronous => {
                while !self.queue.is_empty() {
                    let frontier: Vec<VertexId> = self.queue.drain(..).collect();
                    for &u in &frontier {
                        self.queued[u as usize] = false;
                    }
                    for u in frontier {
                        graph.for_each_out(u, |v, w| self.relax(prog, values, stats, u, v, w));
                    }
                    if stats.improvements - start > limit {
                        return Err(EngineError::NonConvergence { updates: stats.improvements - start });
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_selects_mode() {
        let p = SchedulerPolicy::default();
        assert_eq!(p.mode_for(9_999), SchedulerMode::Asynchronous);
        assert_eq!(p.mode_for(10_000), SchedulerMode::Synchronous);
        let forced = SchedulerPolicy::forced(SchedulerMode::Synchronous);
        assert_eq!(forced.mode_for(0), SchedulerMode::Synchronous);
    }

    #[test]
    fn vertex_queued_once() {
        let mut s = Scheduler::new(SchedulerMode::Asynchronous, 4);
        s.schedule(2);
        s.schedule(2);
        s.schedule(1);
        assert_eq!(s.queue.len(), 2);
    }
}
