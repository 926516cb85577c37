// Building CSR graphs and stacking a batch on top without copying or
// writing to either.
//
//     cargo run --example csr_compose

use std::error::Error;

use evograph::graph::{build_csr, compose, Edge, EdgeSet, OutAdjacency};

pub fn run() -> Result<(), Box<dyn Error>> {
    let base: EdgeSet = [(0, 1, 4.0), (1, 2, 1.0), (2, 3, 2.0)].into_iter().map(|(s, d, w)| Edge::new(s, d, w)).collect();
    let batch: EdgeSet = [(0, 2, 9.0), (1, 3, 7.0)].into_iter().map(|(s, d, w)| Edge::new(s, d, w)).collect();
    let base = build_csr(&base, 4)?;
    let overlay = build_csr(&batch, 4)?;
    let before = (base.checksum(), overlay.checksum());

    let view = compose(&base, &[&overlay])?;
    println!("composed view: {} vertices, {} edges", view.vertex_count(), view.edge_count());
    for v in 0..4 {
        let mut out = Vec::new();
        view.for_each_out(v, |d, w| out.push((d, w)));
        println!("  {v} -> {out:?}");
    }
    assert_eq!(view.edge_count(), 5);
    assert!(view.contains_edge(1, 3));

    // an overlay may not repeat an edge of the layers below it
    let clash = build_csr(&[Edge::new(0, 1, 1.0)].into_iter().collect(), 4)?;
    assert!(view.with_overlay(&clash).is_err());

    assert_eq!(before, (base.checksum(), overlay.checksum()));
    println!("checksums unchanged: {:x} {:x}", before.0, before.1);
    Ok(())
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
