//! Small hand-built stores used by the examples and tests.

use crate::graph::{Edge, EdgeSet};
use crate::store::{DeltaBatch, EvolvingGraphStore};

/// Vertex count of [`three_snapshot_store`].
pub const THREE_SNAPSHOT_VERTICES: usize = 8;

/// Largest edge label used by [`three_snapshot_store`].
pub const THREE_SNAPSHOT_LABELS: u32 = 30;

/// Edge labelled `k` (`1..=30`).
///
/// Labels map bijectively onto `(src, offset)` pairs over 8 vertices, so all
/// 30 labels are distinct edges without self-loops.
pub fn labelled_edge(k: u32) -> Edge {
    let src = k % 8;
    let dst = (src + 1 + k / 8) % 8;
    Edge::new(src, dst, f64::from(1 + (k * 7) % 5))
}

pub fn labelled_set(labels: &[u32]) -> EdgeSet {
    labels.iter().map(|&k| labelled_edge(k)).collect()
}

pub const ADD_0: [u32; 3] = [3, 12, 15];
pub const DEL_0: [u32; 5] = [9, 11, 16, 23, 29];
pub const ADD_1: [u32; 5] = [9, 11, 14, 24, 29];
pub const DEL_1: [u32; 5] = [3, 4, 7, 10, 26];

/// Three snapshots `G_0, G_1, G_2` linked by the transitions
/// `(+{3,12,15}, -{9,11,16,23,29})` and `(+{9,11,14,24,29}, -{3,4,7,10,26})`.
///
/// Every label not touched by a transition is present throughout, so the
/// common graph of the window is exactly those untouched labels.
pub fn three_snapshot_store() -> EvolvingGraphStore {
    let touched: Vec<u32> = [&ADD_0[..], &DEL_0, &ADD_1, &DEL_1].concat();
    let base_labels: Vec<u32> = (1..=THREE_SNAPSHOT_LABELS)
        .filter(|k| {
            // present in G_0: untouched, or deleted before being (re-)added
            !touched.contains(k) || DEL_0.contains(k) || (DEL_1.contains(k) && !ADD_0.contains(k))
        })
        .collect();
    let mut store = EvolvingGraphStore::new(labelled_set(&base_labels), THREE_SNAPSHOT_VERTICES)
        .expect("fixture edges are in range");
    store
        .new_version(DeltaBatch::new(labelled_set(&ADD_0), labelled_set(&DEL_0)))
        .expect("first fixture transition is valid");
    store
        .new_version(DeltaBatch::new(labelled_set(&ADD_1), labelled_set(&DEL_1)))
        .expect("second fixture transition is valid");
    store
}
