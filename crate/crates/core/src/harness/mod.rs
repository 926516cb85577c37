//! Experiment plumbing behind the `evograph` command line: synthetic data,
//! runs of each engine over a window, result files, timing breakdowns, and
//! verification against from-scratch evaluation.

mod commands;
mod config;
mod generate;
mod query;
mod results;
mod verify;

use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::edge_list::EdgeListError;
use crate::graph::GraphError;
use crate::store::StoreError;
use crate::trigrid::ExportError;

pub use commands::{cmd_gen_batches, cmd_ingest, cmd_query, cmd_schedule, cmd_verify, ScheduleReport};
pub use config::{parse_algorithms, EngineKind, ExperimentConfig, MODE_THRESHOLD_ENV};
pub use generate::{check_transition, generate_batches, random_graph, GenConfig};
pub use query::{engine_schedule, run_engine, EngineRun, TimingRow, CSV_HEADER};
pub use results::{format_results, parse_results, read_result_file, result_path, write_result_file};
pub use verify::{compare_values, verify_results_dir, verify_window, Mismatch, VerifyReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("need {needed} present edges to sample deletions, store has {available}")]
    InsufficientEdges { needed: usize, available: usize },
    #[error("cannot sample {needed} absent vertex pairs, only {available} exist")]
    InsufficientPairs { needed: usize, available: u64 },
    #[error(transparent)]
    EdgeList(#[from] EdgeListError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Schedule(#[from] ExportError),
    #[error("{path}: {message}")]
    Results { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    /// Process exit status: 2 for usage and configuration problems, 3 for
    /// I/O and parse failures. Verification mismatches (1) are not errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::EdgeList(_)
            | HarnessError::Io(_)
            | HarnessError::Schedule(_)
            | HarnessError::Results { .. }
            | HarnessError::Store(StoreError::Io(_) | StoreError::Format { .. })
            | HarnessError::Engine(EngineError::Store(StoreError::Io(_) | StoreError::Format { .. })) => 3,
            HarnessError::Graph(_) => 3,
            _ => 2,
        }
    }
}
