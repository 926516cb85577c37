// The command-line workflow driven from code: ingest an edge list, grow it
// with random transitions, inspect the schedule, run every engine, verify.
// Each step is also an `evograph` subcommand.
//
//     cargo run --example cli_workflow

use std::error::Error;
use std::fs;

use evograph::harness::{
    cmd_gen_batches, cmd_ingest, cmd_query, cmd_schedule, cmd_verify, ExperimentConfig, GenConfig,
};
use evograph::trigrid::ScheduleKind;

pub fn run() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("evograph-cli-example-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    let edges = dir.join("graph.el");
    let mut text = String::from("# src dst weight\n");
    for v in 0..200u32 {
        for k in [1, 7, 31] {
            text.push_str(&format!("{v} {} {}\n", (v + k) % 200, 1 + (v * k) % 9));
        }
    }
    fs::write(&edges, text)?;

    let store_dir = dir.join("store");
    let store = cmd_ingest(&edges, &store_dir)?; // evograph ingest graph.el --store store
    println!("ingested {} edges", store.base_edges().len());

    let gen = GenConfig { count: 5, batch_size: 60, add_fraction: 0.5, seed: 42, max_weight: 9 };
    cmd_gen_batches(&store_dir, &gen)?; // evograph gen-batches --store store --count 5 ...

    let report = cmd_schedule(&store_dir, None, ScheduleKind::WorkSharing, Some(&dir.join("schedule.txt")), false, 3.0)?;
    println!("{report}");

    let cfg = ExperimentConfig::new(&store_dir);
    let runs = cmd_query(&cfg, &dir.join("results"))?; // evograph query --store store --out results
    println!("{} engine runs, timing in {}", runs.len(), dir.join("results/sssp/timing.csv").display());

    let verdict = cmd_verify(&cfg, Some(&dir.join("results")))?; // evograph verify --results results
    println!("{verdict}");
    assert!(verdict.passed());
    fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
