use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::fixtures::{labelled_set, three_snapshot_store};

fn e(s: u32, d: u32) -> Edge {
    Edge::new(s, d, 1.0)
}

/// Random store built alongside a naive list of materialized snapshots.
fn random_store(seed: u64, v: u32, transitions: usize) -> (EvolvingGraphStore, Vec<EdgeSet>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = EdgeSet::new();
    while current.len() < (v * 2) as usize {
        let _ = current.insert(Edge::new(rng.gen_range(0..v), rng.gen_range(0..v), rng.gen_range(1..5) as f64));
    }
    let mut store = EvolvingGraphStore::new(current.clone(), v as usize).unwrap();
    let mut snapshots = vec![current.clone()];
    for _ in 0..transitions {
        let mut deletions = EdgeSet::new();
        for e in current.iter() {
            if rng.gen_bool(0.2) {
                deletions.insert(e).unwrap();
            }
        }
        let mut additions = EdgeSet::new();
        for _ in 0..v {
            let cand = Edge::new(rng.gen_range(0..v), rng.gen_range(0..v), rng.gen_range(1..5) as f64);
            if !current.contains(cand.src, cand.dst) {
                let _ = additions.insert(cand);
            }
        }
        let batch = DeltaBatch::new(additions, deletions);
        current = batch.apply_to(&current);
        store.new_version(batch).unwrap();
        snapshots.push(current.clone());
    }
    (store, snapshots)
}

fn brute_common(snapshots: &[EdgeSet], iv: Interval) -> EdgeSet {
    let mut acc = snapshots[iv.lo].clone();
    for s in &snapshots[iv.lo + 1..=iv.hi] {
        acc = acc.intersection(s);
    }
    acc
}

#[test]
fn empty_base_has_one_empty_snapshot() {
    let store = EvolvingGraphStore::new(EdgeSet::new(), 4).unwrap();
    assert_eq!(store.snapshot_count(), 1);
    assert!(store.get_version(0).unwrap().is_empty());
}

#[test]
fn base_snapshot_and_runs() {
    let base = EdgeSet::try_from_edges([e(0, 1), e(1, 2), e(2, 3), e(3, 4), e(4, 0)]).unwrap();
    let store = EvolvingGraphStore::new(base.clone(), 5).unwrap();
    assert_eq!(store.get_version(0).unwrap(), base);
    assert!(store.presence_runs().all(|r| r.start == 0 && r.end == 0));
    assert!(matches!(store.get_version(1), Err(StoreError::UnknownSnapshot { snapshot: 1, count: 1 })));
}

#[test]
fn empty_batch_repeats_snapshot() {
    let base = EdgeSet::try_from_edges([e(0, 1), e(1, 2)]).unwrap();
    let mut store = EvolvingGraphStore::new(base, 3).unwrap();
    assert_eq!(store.new_version(DeltaBatch::default()).unwrap(), 1);
    assert_eq!(store.get_version(1).unwrap(), store.get_version(0).unwrap());
    assert_eq!(store.runs_of(0, 1), vec![(0, 1)]);
}

#[test]
fn invalid_batches_rejected() {
    let base = EdgeSet::try_from_edges([e(0, 1)]).unwrap();
    let mut store = EvolvingGraphStore::new(base, 3).unwrap();
    let missing = DeltaBatch::new(EdgeSet::new(), [e(1, 2)].into_iter().collect());
    assert!(matches!(store.new_version(missing), Err(StoreError::DeleteMissingEdge(1, 2))));
    let existing = DeltaBatch::new([e(0, 1)].into_iter().collect(), EdgeSet::new());
    assert!(matches!(store.new_version(existing), Err(StoreError::AddExistingEdge(0, 1))));
    let both = DeltaBatch::new([e(0, 1)].into_iter().collect(), [e(0, 1)].into_iter().collect());
    assert!(matches!(store.new_version(both), Err(StoreError::AddDeleteConflict(0, 1))));
    let oob = DeltaBatch::new([e(0, 7)].into_iter().collect(), EdgeSet::new());
    assert!(matches!(store.new_version(oob), Err(StoreError::Graph(GraphError::VertexOutOfRange { .. }))));
    assert_eq!(store.snapshot_count(), 1);
}

#[test]
fn three_snapshot_transitions() {
    let store = three_snapshot_store();
    let g1 = store.get_version(1).unwrap();
    assert!(labelled_set(&[3]).is_subset(&g1));
    assert!(labelled_set(&[9]).is_disjoint(&g1));

    let g2 = store.get_version(2).unwrap();
    assert!(labelled_set(&[9, 11, 14, 24, 29]).is_subset(&g2));
    assert!(labelled_set(&[3, 4, 7, 10, 26]).is_disjoint(&g2));

    let d = store.diff(0, 1).unwrap();
    assert!(d.additions.same_pairs(&labelled_set(&[3, 12, 15])));
    assert!(d.deletions.same_pairs(&labelled_set(&[9, 11, 16, 23, 29])));
    assert!(store.diff(2, 2).unwrap().is_empty());

    // 9 leaves at 1 and returns at 2; two runs
    let nine = labelled_set(&[9]).keys().next().unwrap();
    assert_eq!(store.runs_of(nine.0, nine.1), vec![(0, 0), (2, 2)]);
}

#[test]
fn three_snapshot_common_graph_and_labels() {
    let store = three_snapshot_store();
    let root = Interval::new(0, 2);
    let cg = store.common_edges(root).unwrap();
    assert!(labelled_set(&[3]).is_disjoint(&cg));
    assert!(labelled_set(&[9]).is_disjoint(&cg));
    assert_eq!(cg.len(), 16);
    assert_eq!(store.common_edges(Interval::single(1)).unwrap(), store.get_version(1).unwrap());

    let label = |p: Interval, c: Interval| store.delta_label(p, c).unwrap();
    assert!(label(root, Interval::new(0, 1)).same_pairs(&labelled_set(&[4, 7, 10, 26])));
    assert!(label(root, Interval::new(1, 2)).same_pairs(&labelled_set(&[12, 15])));
    assert!(label(Interval::new(0, 1), Interval::single(0)).same_pairs(&labelled_set(&[9, 11, 16, 23, 29])));
    assert!(label(Interval::new(0, 1), Interval::single(1)).same_pairs(&labelled_set(&[3, 12, 15])));
    assert!(label(Interval::new(1, 2), Interval::single(1)).same_pairs(&labelled_set(&[3, 4, 7, 10, 26])));
    assert!(label(Interval::new(1, 2), Interval::single(2)).same_pairs(&labelled_set(&[9, 11, 14, 24, 29])));

    assert!(matches!(
        store.delta_label(root, Interval::single(1)),
        Err(StoreError::NotAdjacent { .. })
    ));
    assert!(matches!(store.common_edges(Interval::new(1, 3)), Err(StoreError::UnknownSnapshot { .. })));
}

#[test]
fn random_versions_match_replay() {
    let (store, snapshots) = random_store(11, 30, 10);
    for (t, snap) in snapshots.iter().enumerate() {
        assert_eq!(&store.get_version(t).unwrap(), snap, "snapshot {t}");
    }
    // replaying the stored transitions onto the base reproduces every snapshot
    let mut replay = store.base_edges().clone();
    for (t, batch) in store.transitions().iter().enumerate() {
        replay = batch.apply_to(&replay);
        assert_eq!(replay, snapshots[t + 1]);
    }
}

#[test]
fn random_diffs_and_intersections() {
    let (store, snapshots) = random_store(12, 25, 8);
    let n = snapshots.len();
    for a in 0..n {
        for b in 0..n {
            let d = store.diff(a, b).unwrap();
            assert_eq!(d.additions, snapshots[b].difference(&snapshots[a]));
            assert!(d.deletions.same_pairs(&snapshots[a].difference(&snapshots[b])));
            // pairs round-trip; an edge re-added in between may keep G_a's weight
            assert!(d.apply_to(&snapshots[a]).same_pairs(&snapshots[b]));
        }
    }
    for lo in 0..n {
        for hi in lo..n {
            let iv = Interval::new(lo, hi);
            assert_eq!(store.common_edges(iv).unwrap(), brute_common(&snapshots, iv), "{iv}");
        }
    }
}

#[test]
fn presence_runs_are_disjoint_sorted_maximal() {
    let (store, snapshots) = random_store(13, 20, 12);
    let mut by_edge: BTreeMap<(u32, u32), Vec<(usize, usize)>> = BTreeMap::new();
    for r in store.presence_runs() {
        by_edge.entry((r.src, r.dst)).or_default().push((r.start, r.end));
    }
    for (&(s, d), runs) in &by_edge {
        for w in runs.windows(2) {
            // a gap of at least one snapshot separates consecutive runs
            assert!(w[0].1 + 1 < w[1].0, "{s}->{d}: {runs:?}");
        }
        for (t, snap) in snapshots.iter().enumerate() {
            let in_run = runs.iter().any(|&(a, b)| a <= t && t <= b);
            assert_eq!(in_run, snap.contains(s, d));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn labels_along_any_path_rebuild_the_snapshot(seed in 0u64..1000, path_bits in 0u32..4096) {
        let (store, snapshots) = random_store(seed, 12, 6);
        let n = snapshots.len();
        let root = Interval::new(0, n - 1);
        let target = (seed as usize) % n;
        let mut node = root;
        let mut acc = store.common_edges(root).unwrap();
        let mut step = 0;
        while !node.is_single() {
            let go_right = path_bits >> step & 1 == 1;
            let child = match (node.shrink_left(), node.shrink_right()) {
                (Some(r), _) if go_right && r.contains(target) => r,
                (_, Some(l)) if l.contains(target) => l,
                (Some(r), _) => r,
                _ => unreachable!(),
            };
            let parent_cg = store.common_edges(node).unwrap();
            let child_cg = store.common_edges(child).unwrap();
            prop_assert!(parent_cg.is_subset(&child_cg));
            let label = store.delta_label(node, child).unwrap();
            prop_assert!(label.is_disjoint(&acc));
            acc = acc.union(&label);
            node = child;
            step += 1;
        }
        prop_assert_eq!(acc, snapshots[target].clone());
    }
}
