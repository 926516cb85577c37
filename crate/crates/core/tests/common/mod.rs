//! Oracles shared by the integration tests. They are written against the
//! definitions only and share no code with the library's solvers.

#![allow(dead_code)]

use evograph::engine::Algorithm;
use evograph::graph::EdgeSet;
use evograph::store::Interval;
use evograph::trigrid::TriangularGrid;

/// Minimum total weight of an edge subset of the grid that connects the
/// root to every single-snapshot node, found by trying every subset of the
/// out-edges of reached nodes, level by level from the root.
pub fn brute_force_steiner(tg: &TriangularGrid) -> u64 {
    let w = tg.window();
    // nodes ordered by decreasing width so parents precede children
    let mut nodes: Vec<Interval> = Vec::new();
    for len in (1..=w.len()).rev() {
        for lo in w.lo..=w.hi + 1 - len {
            nodes.push(Interval::new(lo, lo + len - 1));
        }
    }
    let index = |iv: Interval| nodes.iter().position(|&n| n == iv).expect("grid node");
    let mut best = u64::MAX;
    let mut reached = vec![false; nodes.len()];
    reached[0] = true;
    search(tg, &nodes, &index, 0, &mut reached, 0, &mut best);
    best
}

fn search(
    tg: &TriangularGrid,
    nodes: &[Interval],
    index: &dyn Fn(Interval) -> usize,
    k: usize,
    reached: &mut Vec<bool>,
    cost: u64,
    best: &mut u64,
) {
    if cost >= *best {
        return;
    }
    if k == nodes.len() {
        if nodes.iter().zip(reached.iter()).all(|(n, &r)| r || n.len() > 1) {
            *best = cost;
        }
        return;
    }
    let iv = nodes[k];
    if iv.len() == 1 || !reached[k] {
        return search(tg, nodes, index, k + 1, reached, cost, best);
    }
    let left = index(Interval::new(iv.lo, iv.hi - 1));
    let right = index(Interval::new(iv.lo + 1, iv.hi));
    let wl = tg.left_weight(iv).expect("inner node");
    let wr = tg.right_weight(iv).expect("inner node");
    for (take_l, take_r) in [(false, false), (true, false), (false, true), (true, true)] {
        let saved = (reached[left], reached[right]);
        let mut c = cost;
        if take_l {
            reached[left] = true;
            c += wl;
        }
        if take_r {
            reached[right] = true;
            c += wr;
        }
        search(tg, nodes, index, k + 1, reached, c, best);
        reached[left] = saved.0;
        reached[right] = saved.1;
    }
}

/// Fixed point by repeated sweeps over every edge until nothing changes.
pub fn sweep_oracle(edges: &EdgeSet, vertex_count: usize, algorithm: Algorithm, source: u32) -> Vec<f64> {
    let (identity, start): (f64, f64) = match algorithm {
        Algorithm::Bfs | Algorithm::Sssp | Algorithm::Ssnp => (f64::INFINITY, 0.0),
        Algorithm::Sswp => (0.0, f64::INFINITY),
        Algorithm::Viterbi => (0.0, 1.0),
    };
    let f = |x: f64, w: f64| match algorithm {
        Algorithm::Bfs => x + 1.0,
        Algorithm::Sssp => x + w,
        Algorithm::Sswp => x.min(w),
        Algorithm::Ssnp => x.max(w),
        Algorithm::Viterbi => x / w,
    };
    let improves = |a: f64, b: f64| match algorithm {
        Algorithm::Sswp | Algorithm::Viterbi => a > b,
        _ => a < b,
    };
    let mut val = vec![identity; vertex_count];
    val[source as usize] = start;
    let edges: Vec<_> = edges.iter().collect();
    loop {
        let mut changed = false;
        for e in &edges {
            let x = val[e.src as usize];
            if x == identity {
                continue;
            }
            let c = f(x, e.weight);
            if improves(c, val[e.dst as usize]) {
                val[e.dst as usize] = c;
                changed = true;
            }
        }
        if !changed {
            return val;
        }
    }
}

/// Exact equality, or relative `1e-9` for Viterbi.
pub fn values_match(algorithm: Algorithm, a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(&x, &y)| {
            x == y || (algorithm == Algorithm::Viterbi && (x - y).abs() <= 1e-9 * x.abs().max(y.abs()))
        })
}
