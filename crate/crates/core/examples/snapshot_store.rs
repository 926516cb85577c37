// Versioned snapshots: appending transitions, reconstructing versions,
// common graphs of windows, diffs, and the on-disk format.
//
//     cargo run --example snapshot_store

use std::error::Error;

use evograph::graph::{Edge, EdgeSet};
use evograph::store::{load_store, save_store, DeltaBatch, EvolvingGraphStore, Interval};

fn edges(list: &[(u32, u32)]) -> EdgeSet {
    list.iter().map(|&(s, d)| Edge::new(s, d, 1.0)).collect()
}

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut store = EvolvingGraphStore::new(edges(&[(0, 1), (1, 2), (2, 3), (3, 0)]), 4)?;
    store.new_version(DeltaBatch::new(edges(&[(0, 2)]), edges(&[(3, 0)])))?;
    store.new_version(DeltaBatch::new(edges(&[(3, 0)]), edges(&[(1, 2)])))?;

    for t in 0..store.snapshot_count() {
        println!("G_{t}: {:?}", store.get_version(t)?.keys().collect::<Vec<_>>());
    }
    let window = Interval::new(0, 2);
    let common = store.common_edges(window)?;
    println!("common graph of {window}: {:?}", common.keys().collect::<Vec<_>>());
    assert_eq!(common.len(), 2);
    println!("runs of (3, 0): {:?}", store.runs_of(3, 0));

    let diff = store.diff(0, 2)?;
    println!("diff 0 -> 2: +{:?} -{:?}", diff.additions.keys().collect::<Vec<_>>(), diff.deletions.keys().collect::<Vec<_>>());
    assert!(diff.apply_to(&store.get_version(0)?).same_pairs(&store.get_version(2)?));

    let dir = std::env::temp_dir().join(format!("evograph-snapshot-example-{}", std::process::id()));
    save_store(&store, &dir)?;
    let loaded = load_store(&dir)?;
    assert_eq!(loaded.get_version(2)?, store.get_version(2)?);
    println!("saved and reloaded {} snapshots from {}", loaded.snapshot_count(), dir.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
