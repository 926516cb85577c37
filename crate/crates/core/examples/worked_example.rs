// The three-snapshot running example: delta labels on the triangular grid,
// the optimal schedule, and the direct-hop alternative.
//
//     cargo run --example worked_example

use std::error::Error;

use evograph::fixtures::three_snapshot_store;
use evograph::store::Interval;
use evograph::trigrid::{build_tg, bypass_merge, direct_hop_schedule, solve_steiner, write_schedule};

pub fn run() -> Result<(), Box<dyn Error>> {
    let store = three_snapshot_store();
    let window = store.full_window();
    println!("snapshots {}, common graph {} edges", store.snapshot_count(), store.common_edges(window)?.len());

    let tg = build_tg(&store, window)?;
    for node in tg.nodes().filter(|n| !n.is_single()) {
        let (l, r) = (node.shrink_right().unwrap(), node.shrink_left().unwrap());
        println!(
            "{node} -> {l} adds {:?}, -> {r} adds {:?}",
            store.delta_label(node, l)?.keys().collect::<Vec<_>>(),
            store.delta_label(node, r)?.keys().collect::<Vec<_>>()
        );
    }

    let tree = solve_steiner(&tg);
    assert_eq!(tree.total_cost, 19);
    let hop = direct_hop_schedule(&store, window)?;
    assert_eq!(hop.total_cost, 23);
    println!("work sharing {} additions, direct hop {}", tree.total_cost, hop.total_cost);

    let merged = bypass_merge(tree);
    let mut doc = Vec::new();
    write_schedule(&mut doc, &merged, false)?;
    print!("{}", String::from_utf8(doc)?);
    assert_eq!(merged.path_to(2).map(|p| p.len()), Some(2));
    assert!(merged.leaves().iter().all(|&t| Interval::single(t).is_single()));
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
