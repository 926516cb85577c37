//! Result files: one `vertex value` line per vertex in id order, with
//! unreached vertices of minimizing programs written as `inf`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{EngineKind, HarnessError};
use crate::engine::{Algorithm, Value};
use crate::store::SnapshotId;

/// `{out}/{algorithm}/{engine}/t{snapshot:04}.txt`
pub fn result_path(out: &Path, algorithm: Algorithm, engine: EngineKind, snapshot: SnapshotId) -> PathBuf {
    out.join(algorithm.to_string()).join(engine.name()).join(format!("t{snapshot:04}.txt"))
}

pub fn format_results(values: &[Value]) -> String {
    let mut s = String::with_capacity(values.len() * 8);
    for (v, x) in values.iter().enumerate() {
        writeln!(s, "{v} {x}").expect("writing to a String");
    }
    s
}

pub fn parse_results(text: &str) -> Result<Vec<Value>, String> {
    let mut values = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        let (Some(v), Some(x), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(format!("line {}: expected `vertex value`", n + 1));
        };
        let v: usize = v.parse().map_err(|e| format!("line {}: vertex: {e}", n + 1))?;
        if v != values.len() {
            return Err(format!("line {}: vertex {v} out of order", n + 1));
        }
        values.push(x.parse().map_err(|e| format!("line {}: value: {e}", n + 1))?);
    }
    Ok(values)
}

pub fn write_result_file(path: &Path, values: &[Value]) -> Result<(), HarnessError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, format_results(values))?;
    Ok(())
}

pub fn read_result_file(path: &Path) -> Result<Vec<Value>, HarnessError> {
    let text = fs::read_to_string(path)?;
    parse_results(&text).map_err(|message| HarnessError::Results { path: path.display().to_string(), message })
}
