//! Text form of an evaluation schedule.
//!
//! ```text
//! # evograph schedule v1
//! kind work-sharing
//! window 0:2
//! total_cost 19
//! node_count 5
//! edges no
//! node 0 interval 0:2 parent - from - batch 0
//! node 1 interval 0:1 parent 0 from 0:2 batch 4
//! ...
//! ```
//!
//! Nodes are listed in pre-order, children left to right. With `edges yes`,
//! each node's batch follows the node list as `edge NODE SRC DST WEIGHT`
//! lines, in node order and then `(src, dst)` order.

use std::collections::BTreeMap;
use std::io::{self, Write};

use thiserror::Error;

use super::schedule::{BatchSpec, EvaluationSchedule, ScheduleKind, ScheduleNode};
use crate::graph::{Edge, EdgeSet};
use crate::store::Interval;

const HEADER: &str = "# evograph schedule v1";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("schedule line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn write_schedule<W: Write>(mut out: W, schedule: &EvaluationSchedule, with_edges: bool) -> io::Result<()> {
    let nodes = schedule.root.preorder();
    writeln!(out, "{HEADER}")?;
    writeln!(out, "kind {}", schedule.kind)?;
    writeln!(out, "window {}", schedule.window())?;
    writeln!(out, "total_cost {}", schedule.total_cost)?;
    writeln!(out, "node_count {}", nodes.len())?;
    writeln!(out, "edges {}", if with_edges { "yes" } else { "no" })?;
    for (id, (parent, node)) in nodes.iter().enumerate() {
        let parent = parent.map_or_else(|| "-".to_string(), |p| p.to_string());
        let from = node.incoming.map_or_else(|| "-".to_string(), |s| s.from.to_string());
        writeln!(out, "node {id} interval {} parent {parent} from {from} batch {}", node.interval, node.batch_size)?;
    }
    if with_edges {
        for (id, (_, node)) in nodes.iter().enumerate() {
            if let Some(batch) = &node.batch {
                for e in batch.iter() {
                    writeln!(out, "edge {id} {} {} {}", e.src, e.dst, e.weight)?;
                }
            }
        }
    }
    Ok(())
}

struct RawNode {
    interval: Interval,
    parent: Option<usize>,
    from: Option<Interval>,
    batch_size: u64,
}

pub fn read_schedule(text: &str) -> Result<EvaluationSchedule, ExportError> {
    let mut kind = None;
    let mut total_cost = None;
    let mut with_edges = false;
    let mut raw: Vec<RawNode> = Vec::new();
    let mut edges: BTreeMap<usize, Vec<Edge>> = BTreeMap::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| ExportError::Parse { line: line_no, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<u64>().map_err(|e| err(format!("bad number `{s}`: {e}")));
        let interval = |s: &str| s.parse::<Interval>().map_err(&err);
        match fields.as_slice() {
            [] => {}
            [first, ..] if first.starts_with('#') => {}
            ["kind", k] => kind = Some(k.parse::<ScheduleKind>().map_err(err)?),
            ["window", _] | ["node_count", _] => {}
            ["total_cost", c] => total_cost = Some(num(c)?),
            ["edges", flag] => with_edges = *flag == "yes",
            ["node", id, "interval", iv, "parent", parent, "from", from, "batch", size] => {
                if num(id)? as usize != raw.len() {
                    return Err(err(format!("node ids must be consecutive, expected {}", raw.len())));
                }
                let parent = match *parent {
                    "-" => None,
                    p => {
                        let p = num(p)? as usize;
                        if p >= raw.len() {
                            return Err(err(format!("parent {p} is not listed before its child")));
                        }
                        Some(p)
                    }
                };
                let from = match *from {
                    "-" => None,
                    f => Some(interval(f)?),
                };
                raw.push(RawNode { interval: interval(iv)?, parent, from, batch_size: num(size)? });
            }
            ["edge", id, src, dst, weight] => {
                let w = weight.parse::<f64>().map_err(|e| err(format!("bad weight: {e}")))?;
                edges
                    .entry(num(id)? as usize)
                    .or_default()
                    .push(Edge::new(num(src)? as u32, num(dst)? as u32, w));
            }
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }

    let kind = kind.ok_or(ExportError::Parse { line: 0, message: "missing kind".into() })?;
    if raw.is_empty() || raw[0].parent.is_some() {
        return Err(ExportError::Parse { line: 0, message: "first node must be the root".into() });
    }
    let mut built: Vec<Option<ScheduleNode>> = Vec::with_capacity(raw.len());
    for (id, r) in raw.iter().enumerate() {
        let batch = if with_edges && r.parent.is_some() {
            let set = EdgeSet::try_from_edges(edges.remove(&id).unwrap_or_default())
                .map_err(|e| ExportError::Parse { line: 0, message: format!("node {id}: {e}") })?;
            Some(set)
        } else {
            None
        };
        built.push(Some(ScheduleNode {
            interval: r.interval,
            incoming: r.from.map(|from| BatchSpec { from, to: r.interval }),
            batch_size: r.batch_size,
            batch,
            children: Vec::new(),
        }));
    }
    // pre-order: attaching in reverse keeps children in their listed order
    for id in (1..raw.len()).rev() {
        let node = built[id].take().expect("each node attached once");
        let parent = raw[id].parent.expect("only the root lacks a parent");
        built[parent].as_mut().expect("parents precede children").children.insert(0, node);
    }
    let root = built[0].take().expect("root");
    let schedule = EvaluationSchedule::new(kind, root);
    if let Some(c) = total_cost {
        if c != schedule.total_cost {
            return Err(ExportError::Parse {
                line: 0,
                message: format!("total_cost {c} disagrees with node batch sizes ({})", schedule.total_cost),
            });
        }
    }
    Ok(schedule)
}
