//! On-disk layout:
//!
//! ```text
//! DIR/meta               "vertex_count V" and "snapshots n" lines
//! DIR/base.el            edge list of G_0
//! DIR/batches/NNNN.delta "+ src dst weight" and "- src dst" lines for transition NNNN
//! ```
//!
//! Everything is written in sorted order, so save -> load -> save is byte-identical.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{DeltaBatch, EvolvingGraphStore, StoreError};
use crate::graph::edge_list::{parse_edge_line, read_edge_list, write_edge_list, EdgeListError};
use crate::graph::{Edge, EdgeSet};

const META: &str = "meta";
const BASE: &str = "base.el";
const BATCHES: &str = "batches";

fn batch_file(t: usize) -> String {
    format!("{t:04}.delta")
}

fn format_err(path: &Path, message: impl Into<String>) -> StoreError {
    StoreError::Format { path: path.display().to_string(), message: message.into() }
}

fn edge_list_err(path: &Path, err: EdgeListError) -> StoreError {
    match err {
        EdgeListError::Io(e) => StoreError::Io(e),
        other => format_err(path, other.to_string()),
    }
}

pub fn save_store(store: &EvolvingGraphStore, dir: &Path) -> Result<(), StoreError> {
    fs::create_dir_all(dir.join(BATCHES))?;

    let mut meta = BufWriter::new(File::create(dir.join(META))?);
    writeln!(meta, "vertex_count {}", store.vertex_count())?;
    writeln!(meta, "snapshots {}", store.snapshot_count())?;
    meta.flush()?;

    let mut base = BufWriter::new(File::create(dir.join(BASE))?);
    write_edge_list(&mut base, store.base_edges())?;
    base.flush()?;

    for (t, batch) in store.transitions().iter().enumerate() {
        let mut out = BufWriter::new(File::create(dir.join(BATCHES).join(batch_file(t)))?);
        for e in batch.additions.iter() {
            writeln!(out, "+ {} {} {}", e.src, e.dst, e.weight)?;
        }
        for e in batch.deletions.iter() {
            writeln!(out, "- {} {}", e.src, e.dst)?;
        }
        out.flush()?;
    }
    Ok(())
}

pub fn load_store(dir: &Path) -> Result<EvolvingGraphStore, StoreError> {
    let meta_path = dir.join(META);
    let meta = fs::read_to_string(&meta_path)?;
    let mut vertex_count = None;
    let mut snapshots = None;
    for line in meta.lines().filter(|l| !l.trim().is_empty()) {
        let (key, value) = line
            .split_once(' ')
            .ok_or_else(|| format_err(&meta_path, format!("malformed line `{line}`")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|e| format_err(&meta_path, format!("bad value in `{line}`: {e}")))?;
        match key {
            "vertex_count" => vertex_count = Some(value),
            "snapshots" => snapshots = Some(value),
            _ => return Err(format_err(&meta_path, format!("unknown key `{key}`"))),
        }
    }
    let vertex_count = vertex_count.ok_or_else(|| format_err(&meta_path, "missing vertex_count"))?;
    let snapshots = snapshots.ok_or_else(|| format_err(&meta_path, "missing snapshots"))?;
    if snapshots == 0 {
        return Err(format_err(&meta_path, "a store holds at least one snapshot"));
    }

    let base_path = dir.join(BASE);
    let (base, _) = read_edge_list(BufReader::new(File::open(&base_path)?))
        .map_err(|e| edge_list_err(&base_path, e))?;
    let mut store = EvolvingGraphStore::new(base, vertex_count)?;

    for t in 0..snapshots - 1 {
        let path = dir.join(BATCHES).join(batch_file(t));
        let batch = read_batch(&path)?;
        store.new_version(batch)?;
    }
    Ok(store)
}

fn read_batch(path: &Path) -> Result<DeltaBatch, StoreError> {
    let reader = BufReader::new(File::open(path)?);
    let mut additions = EdgeSet::new();
    let mut deletions = EdgeSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let (sign, rest) = text.split_at(1);
        let edge = parse_edge_line(rest, line_no)
            .map_err(|e| edge_list_err(path, e))?
            .ok_or_else(|| format_err(path, format!("line {line_no}: missing edge")))?;
        let target = match sign {
            "+" => &mut additions,
            "-" => &mut deletions,
            _ => return Err(format_err(path, format!("line {line_no}: expected `+` or `-`"))),
        };
        target
            .insert(Edge::new(edge.src, edge.dst, edge.weight))
            .map_err(|e| format_err(path, format!("line {line_no}: {e}")))?;
    }
    Ok(DeltaBatch::new(additions, deletions))
}
