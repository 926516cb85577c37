use std::collections::BTreeMap;
use std::time::Duration;

use super::{EngineKind, HarnessError};
use crate::engine::{
    prepare_schedule, run_prepared, Algorithm, BaselineEngine, SchedulerPolicy, Value, WorkStats,
};
use crate::graph::VertexId;
use crate::store::{EvolvingGraphStore, Interval, SnapshotId};
use crate::trigrid::{
    build_tg, bypass_merge, direct_hop_schedule, materialize_batches, solve_steiner, EvaluationSchedule,
    DEFAULT_MAX_WINDOW,
};

/// Columns of the timing CSV, in order.
pub const CSV_HEADER: &str = "engine,snapshot,mutation_ms,incr_add_ms,incr_del_ms,initial_ms,edge_fn_applications";

/// Time and work attributed to one snapshot by one engine.
///
/// The baseline charges the evaluation of the first snapshot to it and each
/// transition to the snapshot it produces. The CommonGraph engines charge
/// the common-graph evaluation to the first snapshot and each schedule edge
/// to the smallest snapshot below it, so shared work is counted once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingRow {
    pub engine: EngineKind,
    pub snapshot: SnapshotId,
    pub mutation_ms: f64,
    pub incr_add_ms: f64,
    pub incr_del_ms: f64,
    pub initial_ms: f64,
    /// All edge-function applications charged to this snapshot.
    pub edge_fn_applications: u64,
    /// Applications made while repairing deletions (baseline only).
    pub deletion_applications: u64,
    /// Applications made while propagating additions.
    pub addition_applications: u64,
    /// Vertices reset by dependence trimming (baseline only).
    pub tainted: u64,
}

impl TimingRow {
    fn empty(engine: EngineKind, snapshot: SnapshotId) -> Self {
        TimingRow {
            engine,
            snapshot,
            mutation_ms: 0.0,
            incr_add_ms: 0.0,
            incr_del_ms: 0.0,
            initial_ms: 0.0,
            edge_fn_applications: 0,
            deletion_applications: 0,
            addition_applications: 0,
            tainted: 0,
        }
    }

    pub fn total_ms(&self) -> f64 {
        self.mutation_ms + self.incr_add_ms + self.incr_del_ms + self.initial_ms
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{:.3},{:.3},{:.3},{:.3},{}",
            self.engine,
            self.snapshot,
            self.mutation_ms,
            self.incr_add_ms,
            self.incr_del_ms,
            self.initial_ms,
            self.edge_fn_applications
        )
    }

    fn add_initial(&mut self, elapsed: Duration, stats: WorkStats) {
        self.initial_ms += ms(elapsed);
        self.edge_fn_applications += stats.edge_fn_applications;
    }

    fn add_additions(&mut self, elapsed: Duration, stats: WorkStats) {
        self.incr_add_ms += ms(elapsed);
        self.edge_fn_applications += stats.edge_fn_applications;
        self.addition_applications += stats.edge_fn_applications;
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Output of one engine on one algorithm over a window.
#[derive(Debug, Clone)]
pub struct EngineRun {
    pub engine: EngineKind,
    pub algorithm: Algorithm,
    pub results: BTreeMap<SnapshotId, Vec<Value>>,
    /// One row per snapshot of the window, in order.
    pub rows: Vec<TimingRow>,
    /// Total batch size of the schedule (CommonGraph engines only).
    pub schedule_cost: Option<u64>,
}

/// The schedule an engine would execute on `window`, with batches filled in.
pub fn engine_schedule(
    store: &EvolvingGraphStore,
    window: Interval,
    engine: EngineKind,
) -> Result<Option<EvaluationSchedule>, HarnessError> {
    store.check_interval(window)?;
    let schedule = match engine {
        EngineKind::Baseline => return Ok(None),
        EngineKind::DirectHop => direct_hop_schedule(store, window)?,
        EngineKind::WorkSharing => {
            if window.len() > DEFAULT_MAX_WINDOW {
                return Err(HarnessError::Usage(format!(
                    "window {window} spans {} snapshots, at most {DEFAULT_MAX_WINDOW} supported",
                    window.len()
                )));
            }
            bypass_merge(solve_steiner(&build_tg(store, window)?))
        }
    };
    Ok(Some(materialize_batches(store, schedule)?))
}

/// Runs `algorithm` from `source` on every snapshot of `window` with one engine.
pub fn run_engine(
    store: &EvolvingGraphStore,
    window: Interval,
    algorithm: Algorithm,
    source: VertexId,
    engine: EngineKind,
    policy: &SchedulerPolicy,
    parallel: bool,
) -> Result<EngineRun, HarnessError> {
    let mut rows: Vec<TimingRow> = window.snapshots().map(|t| TimingRow::empty(engine, t)).collect();
    let mut results = BTreeMap::new();

    let schedule_cost = match engine_schedule(store, window, engine)? {
        None => {
            let first = store.get_version(window.lo)?;
            let start = std::time::Instant::now();
            let (mut streaming, stats) =
                BaselineEngine::new(&first, store.vertex_count(), algorithm, source, *policy)?;
            rows[0].add_initial(start.elapsed(), stats);
            results.insert(window.lo, streaming.values().values.clone());
            for t in window.lo..window.hi {
                let report = streaming.step(&store.transitions()[t])?;
                let r = &mut rows[t + 1 - window.lo];
                r.mutation_ms += ms(report.mutation);
                r.incr_del_ms += ms(report.deletion);
                r.deletion_applications += report.deletion_stats.edge_fn_applications;
                r.edge_fn_applications += report.deletion_stats.edge_fn_applications;
                r.tainted += report.deletion_stats.tainted;
                r.add_additions(report.addition, report.addition_stats);
                results.insert(t + 1, streaming.values().values.clone());
            }
            None
        }
        Some(schedule) => {
            let prepared = prepare_schedule(store, &schedule)?;
            let run = run_prepared(&prepared, &algorithm, source, policy, parallel)?;
            rows[0].add_initial(run.initial.elapsed, run.initial.stats);
            for step in &run.steps {
                rows[step.first_leaf - window.lo].add_additions(step.elapsed, step.stats);
            }
            results.extend(run.results.into_iter().map(|(t, v)| (t, v.values)));
            Some(schedule.total_cost)
        }
    };
    debug_assert_eq!(results.len(), window.len());
    Ok(EngineRun { engine, algorithm, results, rows, schedule_cost })
}
