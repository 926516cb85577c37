//! Exact minimum-cost schedule trees.
//!
//! The grid is planar with all leaves on its bottom boundary, so an optimal
//! tree can always be uncrossed: the two subtrees below any node cover
//! contiguous, non-interleaved leaf ranges. That gives a dynamic program over
//! states `(node [i, j], leaf range [a, b])` with `i <= a <= b <= j`:
//!
//! ```text
//! f(t, t, t, t) = 0
//! f(i, j, a, b) = min of
//!     wL(i, j) + f(i, j-1, a, b)                               if b <= j-1
//!     wR(i, j) + f(i+1, j, a, b)                               if a >= i+1
//!     wL(i, j) + f(i, j-1, a, s) + wR(i, j) + f(i+1, j, s+1, b)  for a <= s < b
//! ```
//!
//! O(m^4) states and O(m^5) time. Ties go to the left descent, then the right
//! one, then the smallest split.

use super::grid::TriangularGrid;
use super::schedule::{EvaluationSchedule, ScheduleKind, ScheduleNode};
use crate::store::Interval;

/// Window width up to which callers are expected to run the exact solver.
pub const DEFAULT_MAX_WINDOW: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Leaf,
    Left,
    Right,
    Split(usize),
}

struct Table {
    m: usize,
    /// `cost[node(i, j)][(a - i) * len + (b - i)]`
    cost: Vec<Vec<u64>>,
}

impl Table {
    fn node(&self, i: usize, j: usize) -> usize {
        i * self.m + j
    }

    fn get(&self, i: usize, j: usize, a: usize, b: usize) -> u64 {
        let len = j - i + 1;
        self.cost[self.node(i, j)][(a - i) * len + (b - i)]
    }
}

fn best(tg: &TriangularGrid, table: &Table, i: usize, j: usize, a: usize, b: usize) -> (u64, Choice) {
    if i == j {
        return (0, Choice::Leaf);
    }
    let (wl, wr) = (tg.local_left(i, j), tg.local_right(i, j));
    let mut out = (u64::MAX, Choice::Leaf);
    let mut offer = |cost: u64, choice: Choice| {
        if cost < out.0 {
            out = (cost, choice);
        }
    };
    if b < j {
        offer(wl + table.get(i, j - 1, a, b), Choice::Left);
    }
    if a > i {
        offer(wr + table.get(i + 1, j, a, b), Choice::Right);
    }
    for s in a..b {
        offer(wl + table.get(i, j - 1, a, s) + wr + table.get(i + 1, j, s + 1, b), Choice::Split(s));
    }
    out
}

/// Minimum-cost tree rooted at the window that reaches every snapshot.
pub fn solve_steiner(tg: &TriangularGrid) -> EvaluationSchedule {
    let m = tg.width();
    let mut table = Table { m, cost: vec![Vec::new(); m * m] };
    for len in 1..=m {
        for i in 0..=m - len {
            let j = i + len - 1;
            let mut cell = vec![u64::MAX; len * len];
            for a in i..=j {
                for b in a..=j {
                    cell[(a - i) * len + (b - i)] = best(tg, &table, i, j, a, b).0;
                }
            }
            let k = table.node(i, j);
            table.cost[k] = cell;
        }
    }

    let lo = tg.window().lo;
    let iv = |i: usize, j: usize| Interval::new(lo + i, lo + j);

    fn build(
        tg: &TriangularGrid,
        table: &Table,
        node: ScheduleNode,
        (i, j, a, b): (usize, usize, usize, usize),
        iv: &dyn Fn(usize, usize) -> Interval,
    ) -> ScheduleNode {
        let mut node = node;
        let here = iv(i, j);
        let left = |a, b| (i, j - 1, a, b);
        let right = |a, b| (i + 1, j, a, b);
        let descend = |node: &mut ScheduleNode, to: (usize, usize, usize, usize), weight: u64| {
            let child = ScheduleNode::reached_from(here, iv(to.0, to.1), weight);
            node.children.push(build(tg, table, child, to, iv));
        };
        match best(tg, table, i, j, a, b).1 {
            Choice::Leaf => {}
            Choice::Left => descend(&mut node, left(a, b), tg.local_left(i, j)),
            Choice::Right => descend(&mut node, right(a, b), tg.local_right(i, j)),
            Choice::Split(s) => {
                descend(&mut node, left(a, s), tg.local_left(i, j));
                descend(&mut node, right(s + 1, b), tg.local_right(i, j));
            }
        }
        node
    }

    let root = build(tg, &table, ScheduleNode::root(iv(0, m - 1)), (0, m - 1, 0, m - 1), &iv);
    let schedule = EvaluationSchedule::new(ScheduleKind::WorkSharing, root);
    debug_assert_eq!(schedule.total_cost, table.get(0, m - 1, 0, m - 1));
    schedule
}
