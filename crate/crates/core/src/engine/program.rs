use std::fmt;
use std::str::FromStr;

use crate::graph::Weight;

/// Vertex value. Every built-in program works on `f64`; `inf` is a legal value.
pub type Value = f64;

/// A monotone push-style vertex program.
///
/// Relaxing edge `(u, v)` proposes `edge_function(val(u), wt(u, v))` for `v`,
/// accepted when it is strictly [`better`](VertexProgram::better). For the
/// fixed point to be reachable by additions alone, improving `val(u)` must
/// never make the proposal worse.
pub trait VertexProgram: Sync {
    fn name(&self) -> &str;

    /// Value of every vertex before anything reaches it.
    fn identity(&self) -> Value;

    /// Value of the query source.
    fn source_value(&self) -> Value;

    fn edge_function(&self, source: Value, weight: Weight) -> Value;

    /// Strict improvement: `candidate` replaces `current`.
    fn better(&self, candidate: Value, current: Value) -> bool;

    /// Weights on which the program is guaranteed to converge.
    fn accepts_weight(&self, _weight: Weight) -> bool {
        true
    }
}

/// The built-in programs.
///
/// | program | edge function       | update  | identity | source |
/// |---------|---------------------|---------|----------|--------|
/// | BFS     | `val(u) + 1`        | min     | inf      | 0      |
/// | SSSP    | `val(u) + wt`       | min     | inf      | 0      |
/// | SSWP    | `min(val(u), wt)`   | max     | 0        | inf    |
/// | SSNP    | `max(val(u), wt)`   | min     | inf      | 0      |
/// | Viterbi | `val(u) / wt`       | max     | 0        | 1      |
///
/// Viterbi only converges when no cycle amplifies, so it rejects weights below 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Bfs,
    Sssp,
    Sswp,
    Ssnp,
    Viterbi,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Bfs, Algorithm::Sssp, Algorithm::Sswp, Algorithm::Ssnp, Algorithm::Viterbi];

    fn minimizes(self) -> bool {
        matches!(self, Algorithm::Bfs | Algorithm::Sssp | Algorithm::Ssnp)
    }

    /// Whether results are exact on integer weights (everything but Viterbi).
    pub fn is_exact(self) -> bool {
        self != Algorithm::Viterbi
    }
}

impl VertexProgram for Algorithm {
    fn name(&self) -> &str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Sssp => "sssp",
            Algorithm::Sswp => "sswp",
            Algorithm::Ssnp => "ssnp",
            Algorithm::Viterbi => "viterbi",
        }
    }

    fn identity(&self) -> Value {
        if self.minimizes() {
            Value::INFINITY
        } else {
            0.0
        }
    }

    fn source_value(&self) -> Value {
        match self {
            Algorithm::Bfs | Algorithm::Sssp | Algorithm::Ssnp => 0.0,
            Algorithm::Sswp => Value::INFINITY,
            Algorithm::Viterbi => 1.0,
        }
    }

    #[inline]
    fn edge_function(&self, source: Value, weight: Weight) -> Value {
        match self {
            Algorithm::Bfs => source + 1.0,
            Algorithm::Sssp => source + weight,
            Algorithm::Sswp => source.min(weight),
            Algorithm::Ssnp => source.max(weight),
            Algorithm::Viterbi => source / weight,
        }
    }

    #[inline]
    fn better(&self, candidate: Value, current: Value) -> bool {
        if self.minimizes() {
            candidate < current
        } else {
            candidate > current
        }
    }

    fn accepts_weight(&self, weight: Weight) -> bool {
        *self != Algorithm::Viterbi || weight >= 1.0
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected bfs, sssp, sswp, ssnp or viterbi)"))
    }
}
