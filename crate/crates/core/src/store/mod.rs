//! Versioned storage of an evolving graph.
//!
//! The store keeps the base snapshot, the ordered transitions, and for every
//! edge ever seen the maximal runs of consecutive snapshots in which it is
//! present. Snapshots, diffs, and the common graph of any interval are all
//! answered from the runs; nothing but the runs is indexed.

mod io;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, GraphError, VertexId, Weight};

pub use io::{load_store, save_store};

/// Index of a snapshot `G_t`, `t` in `[0, n)`.
pub type SnapshotId = usize;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown snapshot {snapshot} (store holds {count})")]
    UnknownSnapshot { snapshot: SnapshotId, count: usize },
    #[error("invalid interval {0}: lower bound exceeds upper bound")]
    InvalidInterval(Interval),
    #[error("cannot delete missing edge ({0}, {1})")]
    DeleteMissingEdge(VertexId, VertexId),
    #[error("cannot add existing edge ({0}, {1})")]
    AddExistingEdge(VertexId, VertexId),
    #[error("edge ({0}, {1}) is both added and deleted in one batch")]
    AddDeleteConflict(VertexId, VertexId),
    #[error("{child} is not a shrink-by-one child of {parent}")]
    NotAdjacent { parent: Interval, child: Interval },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Closed range of snapshots `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: SnapshotId,
    pub hi: SnapshotId,
}

impl Interval {
    pub fn new(lo: SnapshotId, hi: SnapshotId) -> Self {
        Interval { lo, hi }
    }

    pub fn single(t: SnapshotId) -> Self {
        Interval { lo: t, hi: t }
    }

    /// Number of snapshots covered.
    pub fn len(&self) -> usize {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_single(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, t: SnapshotId) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn covers(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `[lo, hi - 1]`, the left child in the triangular grid.
    pub fn shrink_right(&self) -> Option<Interval> {
        (self.hi > self.lo).then(|| Interval::new(self.lo, self.hi - 1))
    }

    /// `[lo + 1, hi]`, the right child in the triangular grid.
    pub fn shrink_left(&self) -> Option<Interval> {
        (self.hi > self.lo).then(|| Interval::new(self.lo + 1, self.hi))
    }

    pub fn snapshots(&self) -> std::ops::RangeInclusive<SnapshotId> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = String;

    /// Parses `LO:HI` (inclusive) or a single `T`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| x.trim().parse::<SnapshotId>().map_err(|e| format!("bad snapshot `{x}`: {e}"));
        let iv = match s.split_once(':') {
            Some((lo, hi)) => Interval::new(parse(lo)?, parse(hi)?),
            None => Interval::single(parse(s)?),
        };
        if iv.lo > iv.hi {
            return Err(format!("window {s}: lower bound exceeds upper bound"));
        }
        Ok(iv)
    }
}

/// Edge additions and deletions turning one snapshot into the next.
///
/// Deletions are matched by `(src, dst)`; their weights are informational.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DeltaBatch {
    pub additions: EdgeSet,
    pub deletions: EdgeSet,
}

impl DeltaBatch {
    pub fn new(additions: EdgeSet, deletions: EdgeSet) -> Self {
        DeltaBatch { additions, deletions }
    }

    pub fn len(&self) -> usize {
        self.additions.len() + self.deletions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.additions.is_empty() && self.deletions.is_empty()
    }

    /// Applies the batch to a materialized snapshot without validation.
    pub fn apply_to(&self, snapshot: &EdgeSet) -> EdgeSet {
        let mut out = snapshot.difference(&self.deletions);
        for e in self.additions.iter() {
            out.remove(e.src, e.dst);
            out.insert(e).expect("weights validated on insertion");
        }
        out
    }
}

/// One maximal run of consecutive snapshots containing an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Run {
    start: SnapshotId,
    /// `None` while the edge is still present in the newest snapshot.
    end: Option<SnapshotId>,
    weight: Weight,
}

/// Presence run with its end resolved against the current snapshot count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PresenceRun {
    pub src: VertexId,
    pub dst: VertexId,
    pub start: SnapshotId,
    pub end: SnapshotId,
    pub weight: Weight,
}

impl PresenceRun {
    pub fn covers(&self, iv: &Interval) -> bool {
        self.start <= iv.lo && iv.hi <= self.end
    }

    pub fn edge(&self) -> Edge {
        Edge::new(self.src, self.dst, self.weight)
    }
}

#[derive(Debug, Clone)]
pub struct EvolvingGraphStore {
    vertex_count: usize,
    base: EdgeSet,
    transitions: Vec<DeltaBatch>,
    presence: BTreeMap<(VertexId, VertexId), Vec<Run>>,
}

impl EvolvingGraphStore {
    /// A store holding the single snapshot `G_0 = base`.
    pub fn new(base: EdgeSet, vertex_count: usize) -> Result<Self, StoreError> {
        check_range(&base, vertex_count)?;
        let presence = base
            .iter()
            .map(|e| (e.key(), vec![Run { start: 0, end: None, weight: e.weight }]))
            .collect();
        Ok(EvolvingGraphStore { vertex_count, base, transitions: Vec::new(), presence })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of snapshots `n`.
    pub fn snapshot_count(&self) -> usize {
        self.transitions.len() + 1
    }

    pub fn last_snapshot(&self) -> SnapshotId {
        self.transitions.len()
    }

    pub fn base_edges(&self) -> &EdgeSet {
        &self.base
    }

    /// Transition `t` turns `G_t` into `G_{t+1}`.
    pub fn transitions(&self) -> &[DeltaBatch] {
        &self.transitions
    }

    pub fn full_window(&self) -> Interval {
        Interval::new(0, self.last_snapshot())
    }

    pub fn is_present(&self, src: VertexId, dst: VertexId) -> bool {
        self.presence
            .get(&(src, dst))
            .and_then(|runs| runs.last())
            .is_some_and(|r| r.end.is_none())
    }

    /// Appends `G_{n} = G_{n-1} + additions - deletions` and returns its id.
    pub fn new_version(&mut self, batch: DeltaBatch) -> Result<SnapshotId, StoreError> {
        check_range(&batch.additions, self.vertex_count)?;
        check_range(&batch.deletions, self.vertex_count)?;
        for (s, d) in batch.deletions.keys() {
            if batch.additions.contains(s, d) {
                return Err(StoreError::AddDeleteConflict(s, d));
            }
            if !self.is_present(s, d) {
                return Err(StoreError::DeleteMissingEdge(s, d));
            }
        }
        if let Some((s, d)) = batch.additions.keys().find(|&(s, d)| self.is_present(s, d)) {
            return Err(StoreError::AddExistingEdge(s, d));
        }

        let closing = self.last_snapshot();
        let opening = closing + 1;
        let mut deletions = EdgeSet::new();
        for (s, d) in batch.deletions.keys() {
            let run = self.presence.get_mut(&(s, d)).and_then(|r| r.last_mut()).expect("checked above");
            run.end = Some(closing);
            deletions.insert(Edge::new(s, d, run.weight))?;
        }
        for e in batch.additions.iter() {
            self.presence
                .entry(e.key())
                .or_default()
                .push(Run { start: opening, end: None, weight: e.weight });
        }
        self.transitions.push(DeltaBatch::new(batch.additions, deletions));
        Ok(opening)
    }

    pub fn check_snapshot(&self, t: SnapshotId) -> Result<(), StoreError> {
        if t < self.snapshot_count() {
            Ok(())
        } else {
            Err(StoreError::UnknownSnapshot { snapshot: t, count: self.snapshot_count() })
        }
    }

    pub fn check_interval(&self, iv: Interval) -> Result<(), StoreError> {
        if iv.lo > iv.hi {
            return Err(StoreError::InvalidInterval(iv));
        }
        self.check_snapshot(iv.hi)
    }

    /// All presence runs with resolved ends, in `(src, dst)` order.
    pub fn presence_runs(&self) -> impl Iterator<Item = PresenceRun> + '_ {
        let last = self.last_snapshot();
        self.presence.iter().flat_map(move |(&(src, dst), runs)| {
            runs.iter().map(move |r| PresenceRun {
                src,
                dst,
                start: r.start,
                end: r.end.unwrap_or(last),
                weight: r.weight,
            })
        })
    }

    /// Presence runs of one edge as `(start, end)` pairs.
    pub fn runs_of(&self, src: VertexId, dst: VertexId) -> Vec<(SnapshotId, SnapshotId)> {
        let last = self.last_snapshot();
        self.presence
            .get(&(src, dst))
            .map(|runs| runs.iter().map(|r| (r.start, r.end.unwrap_or(last))).collect())
            .unwrap_or_default()
    }

    /// Edges whose presence satisfies `keep`, one run per edge at most.
    fn collect_runs<F: Fn(&PresenceRun) -> bool>(&self, keep: F) -> EdgeSet {
        self.presence_runs().filter(|r| keep(r)).map(|r| r.edge()).collect()
    }

    /// Exact edge set of `G_t`.
    pub fn get_version(&self, t: SnapshotId) -> Result<EdgeSet, StoreError> {
        self.check_snapshot(t)?;
        Ok(self.collect_runs(|r| r.start <= t && t <= r.end))
    }

    /// The batch turning `G_a` into `G_b`, by `(src, dst)` pair.
    ///
    /// An edge present in both snapshots is not reported even if it was
    /// deleted and re-added with another weight in between.
    pub fn diff(&self, a: SnapshotId, b: SnapshotId) -> Result<DeltaBatch, StoreError> {
        self.check_snapshot(a)?;
        self.check_snapshot(b)?;
        let mut additions = EdgeSet::new();
        let mut deletions = EdgeSet::new();
        for (&key, runs) in &self.presence {
            let last = self.last_snapshot();
            let at = |t: SnapshotId| runs.iter().find(|r| r.start <= t && t <= r.end.unwrap_or(last));
            match (at(a), at(b)) {
                (None, Some(r)) => additions.insert(Edge::new(key.0, key.1, r.weight))?,
                (Some(r), None) => deletions.insert(Edge::new(key.0, key.1, r.weight))?,
                _ => {}
            }
        }
        Ok(DeltaBatch::new(additions, deletions))
    }

    /// The common graph of `iv`: edges present in every snapshot of the interval.
    pub fn common_edges(&self, iv: Interval) -> Result<EdgeSet, StoreError> {
        self.check_interval(iv)?;
        Ok(self.collect_runs(|r| r.covers(&iv)))
    }

    /// `common_edges(inner) \ common_edges(outer)` for nested intervals.
    ///
    /// Since `inner ⊆ outer`, the common graph of `outer` is contained in that
    /// of `inner`, so the result is exactly what must be added to go from one
    /// to the other.
    pub fn additions_between(&self, outer: Interval, inner: Interval) -> Result<EdgeSet, StoreError> {
        self.check_interval(outer)?;
        self.check_interval(inner)?;
        if !outer.covers(&inner) {
            return Err(StoreError::NotAdjacent { parent: outer, child: inner });
        }
        // runs are disjoint, so an edge covering `outer` has no other run covering `inner`
        Ok(self.collect_runs(|r| r.covers(&inner) && !r.covers(&outer)))
    }

    /// Label of the grid edge from `parent` to one of its two shrink-by-one children.
    pub fn delta_label(&self, parent: Interval, child: Interval) -> Result<EdgeSet, StoreError> {
        self.check_interval(parent)?;
        if Some(child) != parent.shrink_right() && Some(child) != parent.shrink_left() {
            return Err(StoreError::NotAdjacent { parent, child });
        }
        self.additions_between(parent, child)
    }
}

fn check_range(edges: &EdgeSet, vertex_count: usize) -> Result<(), GraphError> {
    match edges.max_vertex() {
        Some(v) if v as usize >= vertex_count => Err(GraphError::VertexOutOfRange { vertex: v, vertex_count }),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests;
