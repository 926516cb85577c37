//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.
//! Criteria with runtime bounds run one after another inside a single test
//! so their timings do not interfere; the directional work-count criterion
//! has no bound and runs as its own test.

mod common;

use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_force_steiner, sweep_oracle, values_match};
use evograph::engine::{evaluate_full, prepare_schedule, run_prepared, Algorithm, SchedulerPolicy};
use evograph::fixtures::{labelled_set, three_snapshot_store};
use evograph::graph::{build_csr, ComposedGraphView, EdgeSet};
use evograph::harness::{
    cmd_query, engine_schedule, generate_batches, random_graph, run_engine, EngineKind, ExperimentConfig,
    GenConfig,
};
use evograph::store::{load_store, save_store, EvolvingGraphStore, Interval};
use evograph::trigrid::{
    build_tg, bypass_merge, direct_hop_schedule, materialize_batches, solve_steiner, EvaluationSchedule,
    TriangularGrid,
};

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Runs `check`, prints its verdict line, and returns whether it passed.
fn criterion(n: u32, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = check();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let passed = out.passed && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" / {:.0} s", l.as_secs_f64()));
    println!(
        "criterion {n} {name}: {} ({:.2} s{budget}) {}{}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        out.detail,
        if in_time { "" } else { " [over time budget]" }
    );
    passed
}

fn criterion_three_store() -> EvolvingGraphStore {
    synthetic_store(10_000, 50_000, 10, 500, SEED)
}

fn synthetic_store(vertices: usize, edges: usize, transitions: usize, batch_size: usize, seed: u64) -> EvolvingGraphStore {
    let mut store = EvolvingGraphStore::new(random_graph(vertices, edges, 100, seed), vertices).unwrap();
    let cfg = GenConfig { count: transitions, batch_size, add_fraction: 0.5, seed: seed + 1, max_weight: 100 };
    generate_batches(&mut store, &cfg).unwrap();
    store
}

fn worked_example() -> Outcome {
    let store = three_snapshot_store();
    let root = Interval::new(0, 2);
    let (icg1, icg2) = (Interval::new(0, 1), Interval::new(1, 2));
    let labels = [
        (root, icg1, &[4, 7, 10, 26][..]),
        (root, icg2, &[12, 15]),
        (icg1, Interval::single(0), &[9, 11, 16, 23, 29]),
        (icg1, Interval::single(1), &[3, 12, 15]),
        (icg2, Interval::single(1), &[3, 4, 7, 10, 26]),
        (icg2, Interval::single(2), &[9, 11, 14, 24, 29]),
    ];
    let labels_ok = labels
        .iter()
        .all(|&(p, c, set)| store.delta_label(p, c).unwrap().same_pairs(&labelled_set(set)));

    let tg = build_tg(&store, root).unwrap();
    let weights = [
        tg.left_weight(root),
        tg.right_weight(root),
        tg.left_weight(icg1),
        tg.right_weight(icg1),
        tg.left_weight(icg2),
        tg.right_weight(icg2),
    ];
    let weights_ok = weights == [Some(4), Some(2), Some(5), Some(3), Some(5), Some(5)];

    let tree = solve_steiner(&tg);
    let shape: Vec<(Interval, Vec<Interval>)> = tree
        .root
        .children
        .iter()
        .map(|c| (c.interval, c.children.iter().map(|g| g.interval).collect()))
        .collect();
    let tree1 = vec![
        (icg1, vec![Interval::single(0), Interval::single(1)]),
        (icg2, vec![Interval::single(2)]),
    ];
    // the best tree that branches below the right intermediate node instead
    let tree2 = tg.right_weight(root).unwrap()
        + tg.left_weight(icg2).unwrap()
        + tg.right_weight(icg2).unwrap()
        + tg.left_weight(root).unwrap()
        + tg.left_weight(icg1).unwrap();
    let hop = direct_hop_schedule(&store, root).unwrap();
    let hop_sizes: Vec<u64> = hop.root.children.iter().map(|c| c.batch_size).collect();

    let passed = labels_ok
        && weights_ok
        && tree.total_cost == 19
        && shape == tree1
        && tree2 == 21
        && hop.total_cost == 23
        && hop_sizes == [9, 7, 7];
    outcome(
        passed,
        format!(
            "labels {labels_ok}, weights {weights:?}, optimum {}, alternative {tree2}, direct hop {} {hop_sizes:?}",
            tree.total_cost, hop.total_cost
        ),
    )
}

fn steiner_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for m in 3..=5usize {
        for _ in 0..50 {
            let left: Vec<u64> = (0..m * m).map(|_| rng.gen_range(0..25)).collect();
            let right: Vec<u64> = (0..m * m).map(|_| rng.gen_range(0..25)).collect();
            let tg = TriangularGrid::from_weights(Interval::new(0, m - 1), |i, j| left[i * m + j], |i, j| right[i * m + j]);
            let (dp, brute) = (solve_steiner(&tg).total_cost, brute_force_steiner(&tg));
            if dp != brute {
                return outcome(false, format!("m = {m}: solver {dp}, exhaustive {brute}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} weight assignments"))
}

fn engine_equivalence(store: &EvolvingGraphStore) -> Outcome {
    let window = store.full_window();
    let policy = SchedulerPolicy::default();
    let snapshots: Vec<EdgeSet> = window.snapshots().map(|t| store.get_version(t).unwrap()).collect();
    let mut compared = 0;
    for alg in Algorithm::ALL {
        let mut expected = Vec::new();
        for (t, g) in window.snapshots().zip(&snapshots) {
            let csr = build_csr(g, store.vertex_count()).unwrap();
            let (full, _) = evaluate_full(&ComposedGraphView::new(&csr), &alg, 0, &policy).unwrap();
            if !values_match(alg, &full.values, &sweep_oracle(g, store.vertex_count(), alg, 0)) {
                return outcome(false, format!("{alg}: from-scratch evaluation disagrees with sweeps at snapshot {t}"));
            }
            expected.push(full.values);
        }
        for engine in EngineKind::ALL {
            let run = run_engine(store, window, alg, 0, engine, &policy, true).unwrap();
            for (t, exp) in window.snapshots().zip(&expected) {
                if !values_match(alg, exp, &run.results[&t]) {
                    return outcome(false, format!("{alg} {engine} snapshot {t} differs"));
                }
                compared += 1;
            }
        }
    }
    outcome(true, format!("{compared} (program, engine, snapshot) results"))
}

fn mutation_freedom(store: &EvolvingGraphStore) -> Outcome {
    let window = store.full_window();
    let policy = SchedulerPolicy::default();
    for engine in [EngineKind::DirectHop, EngineKind::WorkSharing] {
        let schedule = engine_schedule(store, window, engine).unwrap().unwrap();
        let prepared = prepare_schedule(store, &schedule).unwrap();
        let before = prepared.checksums();
        for alg in [Algorithm::Sssp, Algorithm::Bfs] {
            run_prepared(&prepared, &alg, 0, &policy, true).unwrap();
        }
        if prepared.checksums() != before {
            return outcome(false, format!("{engine}: checksums changed"));
        }
        let run = run_engine(store, window, Algorithm::Sssp, 0, engine, &policy, false).unwrap();
        if run.rows.iter().any(|r| r.incr_del_ms != 0.0 || r.mutation_ms != 0.0) {
            return outcome(false, format!("{engine}: nonzero deletion or mutation time"));
        }
    }
    outcome(true, "checksums stable, deletion and mutation time zero")
}

fn cost_trend() -> Outcome {
    const TOTAL_CHANGES: usize = 1800;
    let mut ratios = Vec::new();
    let mut report = Vec::new();
    for m in [3usize, 6, 10, 16] {
        let store = synthetic_store(2000, 10_000, m - 1, TOTAL_CHANGES / (m - 1), SEED);
        let window = store.full_window();
        let ws = solve_steiner(&build_tg(&store, window).unwrap()).total_cost;
        let dh = direct_hop_schedule(&store, window).unwrap().total_cost;
        if ws > dh {
            return outcome(false, format!("m = {m}: work sharing {ws} > direct hop {dh}"));
        }
        ratios.push(dh as f64 / ws as f64);
        report.push(format!("m={m} {dh}/{ws}={:.3}", dh as f64 / ws as f64));
    }
    let non_decreasing = ratios.windows(2).all(|w| w[0] <= w[1]);
    outcome(non_decreasing, report.join(", "))
}

fn deletion_asymmetry(store: &EvolvingGraphStore) -> Outcome {
    let run = run_engine(store, store.full_window(), Algorithm::Sssp, 0, EngineKind::Baseline, &SchedulerPolicy::default(), false)
        .unwrap();
    let pairs: Vec<(u64, u64)> =
        run.rows[1..].iter().map(|r| (r.deletion_applications, r.addition_applications)).collect();
    let heavier = pairs.iter().filter(|(d, a)| d > a).count();
    outcome(heavier >= 8, format!("deletions heavier on {heavier}/{} transitions {pairs:?}", pairs.len()))
}

fn path_is_sound(store: &EvolvingGraphStore, schedule: &EvaluationSchedule, t: usize) -> bool {
    let mut acc = store.common_edges(schedule.window()).unwrap();
    for node in schedule.path_to(t).unwrap().into_iter().skip(1) {
        let batch = node.batch.as_ref().unwrap();
        if !batch.is_disjoint(&acc) {
            return false;
        }
        acc = acc.union(batch);
    }
    acc == store.get_version(t).unwrap()
}

fn structure() -> Outcome {
    for m in 1..=12usize {
        let tg = TriangularGrid::from_weights(Interval::new(0, m - 1), |_, _| 1, |_, _| 1);
        if tg.node_count() != m * (m + 1) / 2 || tg.intermediate_levels() != m.saturating_sub(2) {
            return outcome(false, format!("m = {m}: {} nodes, {} levels", tg.node_count(), tg.intermediate_levels()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for trial in 0..100 {
        let snapshots = rng.gen_range(1..=8);
        let store = synthetic_store(40, 120, snapshots - 1, rng.gen_range(2..=30), rng.gen());
        let lo = rng.gen_range(0..snapshots);
        let window = Interval::new(lo, rng.gen_range(lo..snapshots));
        let leaf = rng.gen_range(window.lo..=window.hi);
        let ws = bypass_merge(solve_steiner(&build_tg(&store, window).unwrap()));
        let dh = direct_hop_schedule(&store, window).unwrap();
        for schedule in [ws, dh] {
            let schedule = materialize_batches(&store, schedule).unwrap();
            if !path_is_sound(&store, &schedule, leaf) {
                return outcome(false, format!("trial {trial}: {} path to {leaf} in {window}", schedule.kind));
            }
        }
    }
    outcome(true, "closed forms for m = 1..12, 100 sound paths")
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                files.push((path.strip_prefix(dir).unwrap().display().to_string(), fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

fn round_trip() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let store = synthetic_store(500, 3000, 6, 200, SEED);
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    save_store(&store, &a).unwrap();
    save_store(&load_store(&a).unwrap(), &b).unwrap();
    let store_same = dir_bytes(&a) == dir_bytes(&b);

    let mut cfg = ExperimentConfig::new(&a);
    cfg.seed = SEED;
    cfg.threads = 4;
    let (r1, r2) = (tmp.path().join("r1"), tmp.path().join("r2"));
    let runs1 = cmd_query(&cfg, &r1).unwrap();
    let runs2 = cmd_query(&cfg, &r2).unwrap();
    let results = |dir: &Path| dir_bytes(dir).into_iter().filter(|(p, _)| p.ends_with(".txt")).collect::<Vec<_>>();
    let (f1, f2) = (results(&r1), results(&r2));
    let results_same = f1 == f2;
    let counts = |runs: &[evograph::harness::EngineRun]| {
        runs.iter().flat_map(|r| r.rows.iter().map(|row| row.edge_fn_applications)).collect::<Vec<_>>()
    };
    let counts_same = counts(&runs1) == counts(&runs2);
    outcome(
        store_same && results_same && counts_same,
        format!("store bytes {store_same}, {} result files identical {results_same}, counts {counts_same}", f1.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let mut passed = Vec::new();
    passed.push(criterion(1, "worked example", Some(Duration::from_secs(1)), worked_example));
    passed.push(criterion(2, "steiner exactness", Some(Duration::from_secs(30)), steiner_exactness));

    let start = Instant::now();
    let store = criterion_three_store();
    let build = start.elapsed();
    passed.push(criterion(3, "engine equivalence", Some(Duration::from_secs(60).saturating_sub(build)), || {
        engine_equivalence(&store)
    }));
    passed.push(criterion(4, "mutation freedom", Some(Duration::from_secs(5)), || mutation_freedom(&store)));
    passed.push(criterion(5, "cost dominance and trend", Some(Duration::from_secs(60)), cost_trend));
    passed.push(criterion(7, "structural invariants", Some(Duration::from_secs(10)), structure));
    passed.push(criterion(8, "serialization round trip", None, round_trip));
    let failed: Vec<usize> = passed.iter().enumerate().filter(|(_, &p)| !p).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn acceptance_deletion_asymmetry() {
    let store = criterion_three_store();
    assert!(criterion(6, "deletion asymmetry", None, || deletion_asymmetry(&store)));
}
