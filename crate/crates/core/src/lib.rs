//! Monotonic graph queries over many snapshots of an evolving graph.
//!
//! Deletions between snapshots are turned into additions by starting every
//! evaluation from the common graph of a window of snapshots, the edges
//! present in all of them. From there, each snapshot is reached purely by
//! adding edges, and snapshots that share additions share the incremental
//! work. The crate is organized bottom-up:
//!
//! - [`graph`]: edge sets, CSR adjacency, and mutation-free composed views.
//! - [`store`]: the versioned store and its interval set algebra.
//! - [`trigrid`]: the triangular grid of sub-window common graphs and the
//!   minimum-cost evaluation schedule over it.
//! - [`engine`]: vertex programs, fixed-point evaluation, addition-only
//!   incremental updates, and the deletion-capable streaming baseline.
//! - [`harness`]: batch generation, query runs across engines, verification,
//!   and timing breakdowns; the `evograph` binary is a thin shell over it.

pub mod engine;
pub mod fixtures;
pub mod graph;
pub mod harness;
pub mod store;
pub mod trigrid;
