//! One function per command-line subcommand.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use super::{
    engine_schedule, generate_batches, result_path, run_engine, verify_results_dir, verify_window, EngineKind,
    EngineRun, ExperimentConfig, GenConfig, HarnessError, VerifyReport, CSV_HEADER,
};
use crate::engine::Algorithm;
use crate::graph::edge_list::read_edge_list;
use crate::store::{load_store, save_store, EvolvingGraphStore, Interval, SnapshotId};
use crate::trigrid::{write_schedule, EvaluationSchedule, ScheduleKind};

/// Reads an edge list and writes it as a one-snapshot store.
pub fn cmd_ingest(edges: &Path, out: &Path) -> Result<EvolvingGraphStore, HarnessError> {
    let (base, vertex_count) = read_edge_list(BufReader::new(File::open(edges)?))?;
    let store = EvolvingGraphStore::new(base, vertex_count)?;
    save_store(&store, out)?;
    Ok(store)
}

/// Appends generated transitions to the store in `dir`.
pub fn cmd_gen_batches(dir: &Path, cfg: &GenConfig) -> Result<Vec<SnapshotId>, HarnessError> {
    let mut store = load_store(dir)?;
    let created = generate_batches(&mut store, cfg)?;
    save_store(&store, dir)?;
    Ok(created)
}

#[derive(Debug, Clone)]
pub struct ScheduleReport {
    pub window: Interval,
    /// The schedule of the requested kind, batches included.
    pub schedule: EvaluationSchedule,
    pub work_sharing_cost: u64,
    pub direct_hop_cost: u64,
    /// Changes a streaming engine applies to walk the window, with each
    /// deletion weighted by the requested multiplier.
    pub streaming_cost: f64,
}

impl fmt::Display for ScheduleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "window {}", self.window)?;
        writeln!(f, "work-sharing cost {}", self.work_sharing_cost)?;
        writeln!(f, "direct-hop cost {}", self.direct_hop_cost)?;
        write!(f, "streaming cost {}", self.streaming_cost)
    }
}

/// Solves both schedules for `window` (default: the whole store) and, when
/// `out` is given, writes the one of kind `kind` there.
pub fn cmd_schedule(
    dir: &Path,
    window: Option<Interval>,
    kind: ScheduleKind,
    out: Option<&Path>,
    with_edges: bool,
    deletion_multiplier: f64,
) -> Result<ScheduleReport, HarnessError> {
    let store = load_store(dir)?;
    let window = window.unwrap_or_else(|| store.full_window());
    let schedule_of = |engine| -> Result<EvaluationSchedule, HarnessError> {
        Ok(engine_schedule(&store, window, engine)?.expect("CommonGraph engines have a schedule"))
    };
    let work_sharing = schedule_of(EngineKind::WorkSharing)?;
    let direct_hop = schedule_of(EngineKind::DirectHop)?;
    let streaming_cost = store.transitions()[window.lo..window.hi]
        .iter()
        .map(|b| b.additions.len() as f64 + deletion_multiplier * b.deletions.len() as f64)
        .sum();
    let (work_sharing_cost, direct_hop_cost) = (work_sharing.total_cost, direct_hop.total_cost);
    let schedule = match kind {
        ScheduleKind::WorkSharing => work_sharing,
        ScheduleKind::DirectHop => direct_hop,
    };
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(path)?);
        write_schedule(&mut w, &schedule, with_edges)?;
        w.flush()?;
    }
    Ok(ScheduleReport { window, schedule, work_sharing_cost, direct_hop_cost, streaming_cost })
}

fn thread_pool(threads: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| HarnessError::Usage(format!("thread pool: {e}")))
}

/// Runs every (algorithm, engine) pair of `cfg` and writes one result file
/// per snapshot plus `{out}/{algorithm}/timing.csv`.
pub fn cmd_query(cfg: &ExperimentConfig, out: &Path) -> Result<Vec<EngineRun>, HarnessError> {
    cfg.validate()?;
    let store = load_store(&cfg.store)?;
    let window = cfg.window.unwrap_or_else(|| store.full_window());
    store.check_interval(window)?;
    let jobs: Vec<(Algorithm, EngineKind)> =
        cfg.algorithms.iter().flat_map(|&a| cfg.engines.iter().map(move |&e| (a, e))).collect();
    let parallel = cfg.threads > 1;
    let runs: Vec<EngineRun> = thread_pool(cfg.threads)?.install(|| {
        jobs.par_iter()
            .map(|&(a, e)| run_engine(&store, window, a, cfg.source, e, &cfg.policy, parallel))
            .collect::<Result<_, _>>()
    })?;

    for run in &runs {
        for (&t, values) in &run.results {
            super::write_result_file(&result_path(out, run.algorithm, run.engine, t), values)?;
        }
    }
    for &algorithm in &cfg.algorithms {
        let dir = out.join(algorithm.to_string());
        fs::create_dir_all(&dir)?;
        let mut csv = String::from(CSV_HEADER);
        csv.push('\n');
        for run in runs.iter().filter(|r| r.algorithm == algorithm) {
            for row in &run.rows {
                csv.push_str(&row.csv_line());
                csv.push('\n');
            }
        }
        fs::write(dir.join("timing.csv"), csv)?;
    }
    Ok(runs)
}

/// Checks the engines of `cfg` against from-scratch evaluation, or, when
/// `results` is given, the result files stored there.
pub fn cmd_verify(cfg: &ExperimentConfig, results: Option<&Path>) -> Result<VerifyReport, HarnessError> {
    cfg.validate()?;
    let store = load_store(&cfg.store)?;
    let window = cfg.window.unwrap_or_else(|| store.full_window());
    store.check_interval(window)?;
    match results {
        Some(dir) => verify_results_dir(&store, window, &cfg.algorithms, cfg.source, dir, &cfg.policy),
        None => verify_window(&store, window, &cfg.algorithms, cfg.source, &cfg.engines, &cfg.policy),
    }
}
