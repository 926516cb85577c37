// Evaluating the five vertex programs on a common graph and moving to each
// snapshot by additions only.
//
//     cargo run --example incremental_queries

use std::error::Error;

use evograph::engine::{evaluate_full, incremental_add, run_schedule, Algorithm, SchedulerPolicy};
use evograph::fixtures::three_snapshot_store;
use evograph::graph::{build_csr, ComposedGraphView};
use evograph::store::Interval;
use evograph::trigrid::{build_tg, materialize_batches, solve_steiner};

pub fn run() -> Result<(), Box<dyn Error>> {
    let store = three_snapshot_store();
    let window = store.full_window();
    let policy = SchedulerPolicy::default();
    let v = store.vertex_count();

    // by hand: common graph, then one batch
    let common = build_csr(&store.common_edges(window)?, v)?;
    let batch = build_csr(&store.additions_between(window, Interval::single(2))?, v)?;
    let view = ComposedGraphView::new(&common);
    let (mut values, stats) = evaluate_full(&view, &Algorithm::Sssp, 0, &policy)?;
    println!("sssp on the common graph: {:?} ({} edge functions)", values.values, stats.edge_fn_applications);
    let (_, stats) = incremental_add(&mut values, &view, &batch, &Algorithm::Sssp, &policy)?;
    println!("after adding {} edges: {:?} ({} edge functions)", batch.edge_count(), values.values, stats.edge_fn_applications);

    // the whole window through the optimal schedule
    let schedule = materialize_batches(&store, solve_steiner(&build_tg(&store, window)?))?;
    for alg in Algorithm::ALL {
        let results = run_schedule(&store, &schedule, &alg, 0, &policy)?;
        for (t, vals) in &results {
            let g = build_csr(&store.get_version(*t)?, v)?;
            let (fresh, _) = evaluate_full(&ComposedGraphView::new(&g), &alg, 0, &policy)?;
            assert_eq!(fresh.values, vals.values);
        }
        println!("{alg:>8}: {:?}", results[&2].values);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
