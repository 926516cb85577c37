//! Fixed-point evaluation of monotone vertex programs.
//!
//! Three ways to reach a snapshot's result:
//!
//! - [`evaluate_full`] from scratch on any graph;
//! - [`incremental_add`], which folds an addition-only overlay into an
//!   existing fixed point without touching the underlying CSR arrays;
//! - [`BaselineEngine`], a streaming engine that mutates its graph and
//!   handles deletions by trimming values that depended on removed edges.
//!
//! [`run_schedule`] drives `incremental_add` over a whole evaluation schedule.

mod baseline;
mod evaluate;
mod program;
mod run;
mod scheduler;

use thiserror::Error;

use crate::graph::{GraphError, VertexId, Weight};
use crate::store::StoreError;

pub use baseline::{baseline_stream_step, BaselineEngine, DynamicGraph, StreamStepReport};
pub use evaluate::{evaluate_full, incremental_add};
pub use program::{Algorithm, Value, VertexProgram};
pub use run::{prepare_schedule, run_prepared, run_schedule, PreparedSchedule, ScheduleRun, StepReport};
pub use scheduler::{SchedulerMode, SchedulerPolicy, DEFAULT_MODE_THRESHOLD};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("source {source_vertex} out of range for {vertex_count} vertices")]
    SourceOutOfRange { source_vertex: VertexId, vertex_count: usize },
    #[error("{program} cannot run on edge ({src}, {dst}) with weight {weight}")]
    UnsupportedWeight { program: String, src: VertexId, dst: VertexId, weight: Weight },
    #[error("no fixed point after {updates} value updates")]
    NonConvergence { updates: u64 },
    #[error("streaming baseline needs values with dependence parents")]
    MissingDependenceTracking,
    #[error("schedule is missing the batch for {0}")]
    UnmaterializedBatch(String),
}

/// Sentinel for "no dependence parent".
pub const NO_PARENT: VertexId = VertexId::MAX;

/// Per-vertex results, plus the in-neighbor that produced each value when
/// dependence tracking is on.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexValues {
    pub values: Vec<Value>,
    pub dependence_parent: Option<Vec<VertexId>>,
}

impl VertexValues {
    /// Identity everywhere except `source`.
    pub fn initial<P: VertexProgram + ?Sized>(prog: &P, vertex_count: usize, source: VertexId, track_parents: bool) -> Self {
        let mut values = vec![prog.identity(); vertex_count];
        values[source as usize] = prog.source_value();
        VertexValues {
            values,
            dependence_parent: track_parents.then(|| vec![NO_PARENT; vertex_count]),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub(crate) fn set(&mut self, v: VertexId, value: Value, parent: VertexId) {
        self.values[v as usize] = value;
        if let Some(p) = &mut self.dependence_parent {
            p[v as usize] = parent;
        }
    }

    /// Drops dependence tracking; results compare on values only.
    pub fn without_parents(mut self) -> Self {
        self.dependence_parent = None;
        self
    }
}

/// Work done by one evaluation step.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WorkStats {
    /// Edge-function applications.
    pub edge_fn_applications: u64,
    /// Accepted (strictly improving) value updates.
    pub improvements: u64,
    /// Vertices reset by dependence trimming.
    pub tainted: u64,
}

impl std::ops::AddAssign for WorkStats {
    fn add_assign(&mut self, rhs: Self) {
        self.edge_fn_applications += rhs.edge_fn_applications;
        self.improvements += rhs.improvements;
        self.tainted += rhs.tainted;
    }
}

pub(crate) fn check_weights<P, I>(prog: &P, edges: I) -> Result<(), EngineError>
where
    P: VertexProgram + ?Sized,
    I: IntoIterator<Item = crate::graph::Edge>,
{
    match edges.into_iter().find(|e| !prog.accepts_weight(e.weight)) {
        Some(e) => Err(EngineError::UnsupportedWeight {
            program: prog.name().to_string(),
            src: e.src,
            dst: e.dst,
            weight: e.weight,
        }),
        None => Ok(()),
    }
}
