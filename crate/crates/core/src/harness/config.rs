use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::engine::{Algorithm, SchedulerPolicy};
use crate::graph::VertexId;
use crate::store::Interval;

use super::HarnessError;

/// Environment variable overriding the synchronous/asynchronous batch cutoff.
pub const MODE_THRESHOLD_ENV: &str = "EVOGRAPH_MODE_THRESHOLD";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EngineKind {
    /// Mutating streaming engine with dependence trimming.
    Baseline,
    DirectHop,
    WorkSharing,
}

impl EngineKind {
    pub const ALL: [EngineKind; 3] = [EngineKind::Baseline, EngineKind::DirectHop, EngineKind::WorkSharing];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Baseline => "baseline",
            EngineKind::DirectHop => "direct-hop",
            EngineKind::WorkSharing => "work-sharing",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for EngineKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EngineKind::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| format!("unknown engine `{s}` (expected baseline, direct-hop or work-sharing)"))
    }
}

/// `all` or a comma-separated list of algorithm names.
pub fn parse_algorithms(s: &str) -> Result<Vec<Algorithm>, String> {
    if s == "all" {
        return Ok(Algorithm::ALL.to_vec());
    }
    s.split(',').map(str::parse).collect()
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub store: PathBuf,
    /// Defaults to every snapshot in the store.
    pub window: Option<Interval>,
    pub algorithms: Vec<Algorithm>,
    pub source: VertexId,
    pub engines: Vec<EngineKind>,
    pub seed: u64,
    pub batch_size: usize,
    pub add_fraction: f64,
    pub threads: usize,
    pub policy: SchedulerPolicy,
}

impl ExperimentConfig {
    pub fn new(store: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            store: store.into(),
            window: None,
            algorithms: Algorithm::ALL.to_vec(),
            source: 0,
            engines: EngineKind::ALL.to_vec(),
            seed: 0,
            batch_size: 1000,
            add_fraction: 0.5,
            threads: 1,
            policy: SchedulerPolicy::default(),
        }
    }

    /// Applies `EVOGRAPH_MODE_THRESHOLD` when it is set.
    pub fn with_env_threshold(mut self) -> Result<Self, HarnessError> {
        if let Ok(raw) = std::env::var(MODE_THRESHOLD_ENV) {
            self.policy.mode_threshold = raw
                .trim()
                .parse()
                .map_err(|e| HarnessError::Usage(format!("{MODE_THRESHOLD_ENV}={raw}: {e}")))?;
        }
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if !(0.0..=1.0).contains(&self.add_fraction) {
            return Err(HarnessError::Usage(format!("add fraction {} outside [0, 1]", self.add_fraction)));
        }
        if self.threads == 0 {
            return Err(HarnessError::Usage("thread count must be positive".into()));
        }
        if self.algorithms.is_empty() || self.engines.is_empty() {
            return Err(HarnessError::Usage("nothing to run".into()));
        }
        Ok(())
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig::new(PathBuf::new())
    }
}
