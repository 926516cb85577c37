//! Work-sharing schedules over the triangular grid of common graphs.
//!
//! For a window of `m` snapshots the grid has one node per contiguous
//! sub-window `[i, j]`, standing for the common graph of those snapshots.
//! Node `[i, j]` has edges to `[i, j-1]` and `[i+1, j]`, each labelled with
//! the additions needed to get from the parent's common graph to the child's.
//! The root is the common graph of the whole window, the leaves are the
//! snapshots themselves, and every tree in the grid that reaches all leaves
//! is a valid evaluation schedule. [`solve_steiner`] picks the cheapest one.

mod export;
mod grid;
mod schedule;
mod steiner;

pub use export::{read_schedule, write_schedule, ExportError};
pub use grid::{build_tg, TriangularGrid};
pub use schedule::{
    bypass_merge, direct_hop_schedule, materialize_batches, BatchSpec, EvaluationSchedule, ScheduleKind,
    ScheduleNode,
};
pub use steiner::{solve_steiner, DEFAULT_MAX_WINDOW};
