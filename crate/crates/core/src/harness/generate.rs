use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::graph::{Edge, EdgeSet, VertexId};
use crate::store::{DeltaBatch, EvolvingGraphStore, SnapshotId};

/// Uniform random simple digraph without self-loops and integer weights in
/// `1..=max_weight`.
pub fn random_graph(vertex_count: usize, edge_count: usize, max_weight: u32, seed: u64) -> EdgeSet {
    let possible = (vertex_count as u64) * (vertex_count.saturating_sub(1) as u64);
    assert!(edge_count as u64 <= possible, "{edge_count} edges do not fit on {vertex_count} vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = EdgeSet::new();
    while set.len() < edge_count {
        if let Some(e) = random_edge(&mut rng, vertex_count, max_weight) {
            let _ = set.insert(e);
        }
    }
    set
}

fn random_edge(rng: &mut ChaCha8Rng, vertex_count: usize, max_weight: u32) -> Option<Edge> {
    let src = rng.gen_range(0..vertex_count) as VertexId;
    let dst = rng.gen_range(0..vertex_count) as VertexId;
    let weight = f64::from(rng.gen_range(1..=max_weight));
    (src != dst).then(|| Edge::new(src, dst, weight))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenConfig {
    pub count: usize,
    pub batch_size: usize,
    /// Share of each batch that is additions; the rest are deletions.
    pub add_fraction: f64,
    pub seed: u64,
    pub max_weight: u32,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { count: 1, batch_size: 1000, add_fraction: 0.5, seed: 0, max_weight: 100 }
    }
}

impl GenConfig {
    pub fn additions_per_batch(&self) -> usize {
        (self.add_fraction * self.batch_size as f64).round() as usize
    }
}

/// Appends `cfg.count` random transitions to `store`.
///
/// Deletions are drawn uniformly without replacement from the edges of the
/// newest snapshot; additions uniformly from absent ordered pairs of
/// distinct vertices. The same store, configuration, and seed always
/// produce the same batches.
pub fn generate_batches(store: &mut EvolvingGraphStore, cfg: &GenConfig) -> Result<Vec<SnapshotId>, HarnessError> {
    if !(0.0..=1.0).contains(&cfg.add_fraction) {
        return Err(HarnessError::Usage(format!("add fraction {} outside [0, 1]", cfg.add_fraction)));
    }
    let n_add = cfg.additions_per_batch();
    let n_del = cfg.batch_size - n_add;
    let v = store.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut created = Vec::with_capacity(cfg.count);
    for _ in 0..cfg.count {
        let current = store.get_version(store.last_snapshot())?;
        if current.len() < n_del {
            return Err(HarnessError::InsufficientEdges { needed: n_del, available: current.len() });
        }
        let absent = (v as u64) * (v.saturating_sub(1) as u64) - current.iter().filter(|e| e.src != e.dst).count() as u64;
        if (n_add as u64) > absent {
            return Err(HarnessError::InsufficientPairs { needed: n_add, available: absent });
        }

        let present: Vec<Edge> = current.iter().collect();
        let deletions: EdgeSet = sample(&mut rng, present.len(), n_del).into_iter().map(|k| present[k]).collect();
        let mut additions = EdgeSet::new();
        while additions.len() < n_add {
            if let Some(e) = random_edge(&mut rng, v, cfg.max_weight) {
                if !current.contains(e.src, e.dst) {
                    let _ = additions.insert(e);
                }
            }
        }
        created.push(store.new_version(DeltaBatch::new(additions, deletions))?);
    }
    Ok(created)
}

/// Checks that `batch` is a valid transition out of `before`.
pub fn check_transition(before: &EdgeSet, batch: &DeltaBatch) -> Result<(), String> {
    if let Some((s, d)) = batch.deletions.keys().find(|&(s, d)| !before.contains(s, d)) {
        return Err(format!("deletes absent edge ({s}, {d})"));
    }
    if let Some((s, d)) = batch.additions.keys().find(|&(s, d)| before.contains(s, d)) {
        return Err(format!("adds present edge ({s}, {d})"));
    }
    if !batch.additions.is_disjoint(&batch.deletions) {
        return Err("adds and deletes the same edge".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_batches_leave_store_unchanged() {
        let mut store = EvolvingGraphStore::new(random_graph(50, 200, 10, 1), 50).unwrap();
        let cfg = GenConfig { count: 0, ..Default::default() };
        assert!(generate_batches(&mut store, &cfg).unwrap().is_empty());
        assert_eq!(store.snapshot_count(), 1);
    }

    #[test]
    fn batches_are_seed_determined() {
        let base = random_graph(50, 200, 10, 1);
        let cfg = GenConfig { count: 2, batch_size: 10, add_fraction: 0.5, seed: 9, max_weight: 10 };
        let mut a = EvolvingGraphStore::new(base.clone(), 50).unwrap();
        let mut b = EvolvingGraphStore::new(base, 50).unwrap();
        generate_batches(&mut a, &cfg).unwrap();
        generate_batches(&mut b, &cfg).unwrap();
        assert_eq!(a.transitions(), b.transitions());
        assert!(a.transitions().iter().all(|t| t.additions.len() == 5 && t.deletions.len() == 5));
    }

    #[test]
    fn generated_transitions_are_valid() {
        let mut store = EvolvingGraphStore::new(random_graph(100, 400, 10, 2), 100).unwrap();
        let cfg = GenConfig { count: 8, batch_size: 60, add_fraction: 0.3, seed: 3, max_weight: 10 };
        generate_batches(&mut store, &cfg).unwrap();
        for (t, batch) in store.transitions().iter().enumerate() {
            let before = store.get_version(t).unwrap();
            check_transition(&before, batch).unwrap();
            assert_eq!(batch.additions.len(), 18);
            assert_eq!(batch.deletions.len(), 42);
        }
    }

    #[test]
    fn insufficient_edges_reported() {
        let mut store = EvolvingGraphStore::new(random_graph(10, 5, 3, 4), 10).unwrap();
        let cfg = GenConfig { count: 1, batch_size: 20, add_fraction: 0.5, ..Default::default() };
        assert!(matches!(
            generate_batches(&mut store, &cfg),
            Err(HarnessError::InsufficientEdges { needed: 10, available: 5 })
        ));
    }

    #[test]
    fn checker_flags_bad_transitions() {
        let before: EdgeSet = [Edge::new(0, 1, 1.0)].into_iter().collect();
        let bad = DeltaBatch::new([Edge::new(0, 1, 1.0)].into_iter().collect(), EdgeSet::new());
        assert!(check_transition(&before, &bad).is_err());
        let bad = DeltaBatch::new(EdgeSet::new(), [Edge::new(1, 0, 1.0)].into_iter().collect());
        assert!(check_transition(&before, &bad).is_err());
    }
}
