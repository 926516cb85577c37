// The streaming baseline against both CommonGraph engines on one store:
// identical answers, different work.
//
//     cargo run --release --example baseline_vs_commongraph

use std::error::Error;

use evograph::engine::{Algorithm, SchedulerPolicy};
use evograph::harness::{generate_batches, random_graph, run_engine, EngineKind, GenConfig};
use evograph::store::EvolvingGraphStore;

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut store = EvolvingGraphStore::new(random_graph(5000, 25_000, 100, 1), 5000)?;
    generate_batches(&mut store, &GenConfig { count: 7, batch_size: 400, add_fraction: 0.5, seed: 2, max_weight: 100 })?;
    let window = store.full_window();
    let policy = SchedulerPolicy::default();

    let mut answers = Vec::new();
    println!("{:>13} {:>10} {:>10} {:>10} {:>9}", "engine", "edge fns", "deletion", "addition", "total ms");
    for engine in EngineKind::ALL {
        let run = run_engine(&store, window, Algorithm::Sssp, 0, engine, &policy, true)?;
        let sum = |f: fn(&evograph::harness::TimingRow) -> u64| run.rows.iter().map(f).sum::<u64>();
        let ms: f64 = run.rows.iter().map(|r| r.total_ms()).sum();
        println!(
            "{:>13} {:>10} {:>10} {:>10} {:>9.2}",
            engine,
            sum(|r| r.edge_fn_applications),
            sum(|r| r.deletion_applications),
            sum(|r| r.addition_applications),
            ms
        );
        answers.push(run.results);
    }
    assert!(answers.windows(2).all(|w| w[0] == w[1]));
    println!("all engines agree on {} snapshots", window.len());
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
