use std::fmt;
use std::str::FromStr;

use crate::graph::EdgeSet;
use crate::store::{EvolvingGraphStore, Interval, SnapshotId, StoreError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleKind {
    /// Minimum-cost tree through intermediate common graphs.
    WorkSharing,
    /// Every snapshot reached straight from the window's common graph.
    DirectHop,
}

impl fmt::Display for ScheduleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScheduleKind::WorkSharing => "work-sharing",
            ScheduleKind::DirectHop => "direct-hop",
        })
    }
}

impl FromStr for ScheduleKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "work-sharing" => Ok(ScheduleKind::WorkSharing),
            "direct-hop" => Ok(ScheduleKind::DirectHop),
            _ => Err(format!("unknown schedule kind `{s}`")),
        }
    }
}

/// The additions carried by a schedule edge, named lazily by the pair of
/// nested intervals they connect: `common(to) \ common(from)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchSpec {
    pub from: Interval,
    pub to: Interval,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleNode {
    pub interval: Interval,
    /// `None` only at the root.
    pub incoming: Option<BatchSpec>,
    /// Number of additions on the incoming edge.
    pub batch_size: u64,
    /// Present once [`materialize_batches`] has run.
    pub batch: Option<EdgeSet>,
    pub children: Vec<ScheduleNode>,
}

impl ScheduleNode {
    pub fn root(interval: Interval) -> Self {
        ScheduleNode { interval, incoming: None, batch_size: 0, batch: None, children: Vec::new() }
    }

    pub fn reached_from(parent: Interval, interval: Interval, batch_size: u64) -> Self {
        ScheduleNode {
            interval,
            incoming: Some(BatchSpec { from: parent, to: interval }),
            batch_size,
            batch: None,
            children: Vec::new(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Sum of batch sizes in this subtree, incoming edge included.
    pub fn subtree_cost(&self) -> u64 {
        self.batch_size + self.children.iter().map(ScheduleNode::subtree_cost).sum::<u64>()
    }

    /// Pre-order traversal with parent indices (`None` for `self`).
    pub fn preorder(&self) -> Vec<(Option<usize>, &ScheduleNode)> {
        let mut out = Vec::new();
        let mut stack = vec![(None, self)];
        while let Some((parent, node)) = stack.pop() {
            let id = out.len();
            out.push((parent, node));
            for child in node.children.iter().rev() {
                stack.push((Some(id), child));
            }
        }
        out
    }

    fn leaves_into(&self, out: &mut Vec<SnapshotId>) {
        if self.is_leaf() {
            out.push(self.interval.lo);
        }
        for c in &self.children {
            c.leaves_into(out);
        }
    }

    /// Smallest snapshot reached through this subtree.
    pub fn first_leaf(&self) -> SnapshotId {
        let mut leaves = Vec::new();
        self.leaves_into(&mut leaves);
        leaves.into_iter().min().unwrap_or(self.interval.lo)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationSchedule {
    pub kind: ScheduleKind,
    pub root: ScheduleNode,
    pub total_cost: u64,
}

impl EvaluationSchedule {
    pub fn new(kind: ScheduleKind, root: ScheduleNode) -> Self {
        let total_cost = root.subtree_cost();
        EvaluationSchedule { kind, root, total_cost }
    }

    pub fn window(&self) -> Interval {
        self.root.interval
    }

    /// Snapshots at the leaves, in tree order.
    pub fn leaves(&self) -> Vec<SnapshotId> {
        let mut out = Vec::new();
        self.root.leaves_into(&mut out);
        out
    }

    /// The nodes from the root down to the leaf for snapshot `t`, root included.
    pub fn path_to(&self, t: SnapshotId) -> Option<Vec<&ScheduleNode>> {
        fn walk<'a>(node: &'a ScheduleNode, t: SnapshotId, path: &mut Vec<&'a ScheduleNode>) -> bool {
            path.push(node);
            if node.is_leaf() && node.interval == Interval::single(t) {
                return true;
            }
            for c in node.children.iter().filter(|c| c.interval.contains(t)) {
                if walk(c, t, path) {
                    return true;
                }
            }
            path.pop();
            false
        }
        let mut path = Vec::new();
        walk(&self.root, t, &mut path).then_some(path)
    }

    pub fn node_count(&self) -> usize {
        self.root.preorder().len()
    }

    pub fn is_materialized(&self) -> bool {
        self.root.preorder().iter().all(|(p, n)| p.is_none() || n.batch.is_some())
    }
}

/// Contracts every non-root node with exactly one child into its child.
///
/// The merged edge carries the union of both batches; since the two are
/// disjoint, sizes add and the total cost is preserved.
pub fn bypass_merge(schedule: EvaluationSchedule) -> EvaluationSchedule {
    fn contract(mut node: ScheduleNode) -> ScheduleNode {
        while node.incoming.is_some() && node.children.len() == 1 {
            let child = node.children.pop().expect("one child");
            let from = node.incoming.expect("non-root").from;
            let batch = match (node.batch, child.batch) {
                (Some(a), Some(b)) => Some(a.union(&b)),
                _ => None,
            };
            node = ScheduleNode {
                interval: child.interval,
                incoming: Some(BatchSpec { from, to: child.interval }),
                batch_size: node.batch_size + child.batch_size,
                batch,
                children: child.children,
            };
        }
        node.children = node.children.into_iter().map(contract).collect();
        node
    }
    let EvaluationSchedule { kind, root, total_cost } = schedule;
    let root = contract(root);
    debug_assert_eq!(root.subtree_cost(), total_cost);
    EvaluationSchedule { kind, root, total_cost }
}

/// One edge from the window's common graph to every snapshot, each carrying
/// `G_t \ common(window)`.
pub fn direct_hop_schedule(store: &EvolvingGraphStore, window: Interval) -> Result<EvaluationSchedule, StoreError> {
    store.check_interval(window)?;
    let mut root = ScheduleNode::root(window);
    if window.is_single() {
        return Ok(EvaluationSchedule::new(ScheduleKind::DirectHop, root));
    }
    let mut sizes = vec![0u64; window.len()];
    for run in store.presence_runs().filter(|r| !r.covers(&window)) {
        let (s, e) = (run.start.max(window.lo), run.end.min(window.hi));
        for t in s..=e {
            sizes[t - window.lo] += 1;
        }
    }
    root.children = window
        .snapshots()
        .map(|t| ScheduleNode::reached_from(window, Interval::single(t), sizes[t - window.lo]))
        .collect();
    Ok(EvaluationSchedule::new(ScheduleKind::DirectHop, root))
}

/// Fills in the edge set of every schedule edge from the store.
pub fn materialize_batches(
    store: &EvolvingGraphStore,
    mut schedule: EvaluationSchedule,
) -> Result<EvaluationSchedule, StoreError> {
    fn fill(store: &EvolvingGraphStore, node: &mut ScheduleNode) -> Result<(), StoreError> {
        if let Some(spec) = node.incoming {
            if node.batch.is_none() {
                let batch = store.additions_between(spec.from, spec.to)?;
                debug_assert_eq!(batch.len() as u64, node.batch_size);
                node.batch = Some(batch);
            }
        }
        node.children.iter_mut().try_for_each(|c| fill(store, c))
    }
    store.check_interval(schedule.window())?;
    fill(store, &mut schedule.root)?;
    Ok(schedule)
}
