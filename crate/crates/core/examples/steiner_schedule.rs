// Optimal work-sharing schedules on a synthetic store, compared against
// the direct-hop schedule as the window grows.
//
//     cargo run --release --example steiner_schedule

use std::error::Error;

use evograph::harness::{generate_batches, random_graph, GenConfig};
use evograph::store::{EvolvingGraphStore, Interval};
use evograph::trigrid::{
    build_tg, bypass_merge, direct_hop_schedule, materialize_batches, read_schedule, solve_steiner, write_schedule,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut store = EvolvingGraphStore::new(random_graph(1000, 5000, 50, 7), 1000)?;
    generate_batches(&mut store, &GenConfig { count: 11, batch_size: 200, add_fraction: 0.5, seed: 8, max_weight: 50 })?;

    println!("{:>3} {:>12} {:>10} {:>6}", "m", "work-sharing", "direct-hop", "ratio");
    for m in [2, 4, 8, 12] {
        let window = Interval::new(0, m - 1);
        let tg = build_tg(&store, window)?;
        let ws = solve_steiner(&tg).total_cost;
        let dh = direct_hop_schedule(&store, window)?.total_cost;
        assert!(ws <= dh);
        println!("{m:>3} {ws:>12} {dh:>10} {:>6.2}", dh as f64 / ws as f64);
    }

    let window = Interval::new(0, 5);
    let schedule = materialize_batches(&store, bypass_merge(solve_steiner(&build_tg(&store, window)?)))?;
    let mut doc = Vec::new();
    write_schedule(&mut doc, &schedule, false)?;
    let text = String::from_utf8(doc)?;
    print!("{text}");
    assert_eq!(read_schedule(&text)?.total_cost, schedule.total_cost);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
