use std::fmt;
use std::path::Path;

use super::{read_result_file, result_path, run_engine, EngineKind, HarnessError};
use crate::engine::{evaluate_full, Algorithm, SchedulerPolicy, Value};
use crate::graph::{build_csr, ComposedGraphView, VertexId};
use crate::store::{EvolvingGraphStore, Interval, SnapshotId};

/// Relative tolerance for programs whose values are not integers.
const RELATIVE_TOLERANCE: f64 = 1e-9;

/// First vertex where `actual` disagrees with `expected`, with both values.
/// Lengths must match; a missing vertex counts as a mismatch at that index.
pub fn compare_values(algorithm: Algorithm, expected: &[Value], actual: &[Value]) -> Option<(VertexId, Value, Value)> {
    let same = |a: Value, b: Value| {
        a == b || (!algorithm.is_exact() && (a - b).abs() <= RELATIVE_TOLERANCE * a.abs().max(b.abs()))
    };
    let n = expected.len().max(actual.len());
    (0..n).find_map(|v| {
        let e = expected.get(v).copied().unwrap_or(f64::NAN);
        let a = actual.get(v).copied().unwrap_or(f64::NAN);
        (!same(e, a)).then_some((v as VertexId, e, a))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub algorithm: Algorithm,
    /// Engine name, or the result file checked.
    pub engine: String,
    pub snapshot: SnapshotId,
    pub vertex: VertexId,
    pub expected: Value,
    pub actual: Value,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} snapshot {}: vertex {} expected {} got {}",
            self.algorithm, self.engine, self.snapshot, self.vertex, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    /// Number of (algorithm, engine, snapshot) results compared.
    pub checked: usize,
    /// At most one entry per compared result: its first differing vertex.
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.mismatches {
            writeln!(f, "MISMATCH {m}")?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict}: {} results checked, {} mismatched", self.checked, self.mismatches.len())
    }
}

fn oracle(
    store: &EvolvingGraphStore,
    window: Interval,
    algorithm: Algorithm,
    source: VertexId,
    policy: &SchedulerPolicy,
) -> Result<Vec<Vec<Value>>, HarnessError> {
    window
        .snapshots()
        .map(|t| {
            let csr = build_csr(&store.get_version(t)?, store.vertex_count())?;
            let (values, _) = evaluate_full(&ComposedGraphView::new(&csr), &algorithm, source, policy)?;
            Ok(values.values)
        })
        .collect()
}

/// Runs every engine on `window` and compares each snapshot against a
/// from-scratch evaluation of that snapshot.
pub fn verify_window(
    store: &EvolvingGraphStore,
    window: Interval,
    algorithms: &[Algorithm],
    source: VertexId,
    engines: &[EngineKind],
    policy: &SchedulerPolicy,
) -> Result<VerifyReport, HarnessError> {
    let mut report = VerifyReport::default();
    for &algorithm in algorithms {
        let expected = oracle(store, window, algorithm, source, policy)?;
        for &engine in engines {
            let run = run_engine(store, window, algorithm, source, engine, policy, false)?;
            for (t, exp) in window.snapshots().zip(&expected) {
                report.checked += 1;
                if let Some((vertex, e, a)) = compare_values(algorithm, exp, &run.results[&t]) {
                    report.mismatches.push(Mismatch {
                        algorithm,
                        engine: engine.to_string(),
                        snapshot: t,
                        vertex,
                        expected: e,
                        actual: a,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Compares the result files under `dir` (as written by the query command)
/// against from-scratch evaluation. Engines without files are skipped.
pub fn verify_results_dir(
    store: &EvolvingGraphStore,
    window: Interval,
    algorithms: &[Algorithm],
    source: VertexId,
    dir: &Path,
    policy: &SchedulerPolicy,
) -> Result<VerifyReport, HarnessError> {
    let mut report = VerifyReport::default();
    for &algorithm in algorithms {
        let expected = oracle(store, window, algorithm, source, policy)?;
        for engine in EngineKind::ALL {
            for (t, exp) in window.snapshots().zip(&expected) {
                let path = result_path(dir, algorithm, engine, t);
                if !path.exists() {
                    continue;
                }
                report.checked += 1;
                let actual = read_result_file(&path)?;
                if let Some((vertex, e, a)) = compare_values(algorithm, exp, &actual) {
                    report.mismatches.push(Mismatch {
                        algorithm,
                        engine: path.display().to_string(),
                        snapshot: t,
                        vertex,
                        expected: e,
                        actual: a,
                    });
                }
            }
        }
    }
    Ok(report)
}
