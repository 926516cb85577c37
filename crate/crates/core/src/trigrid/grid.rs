use crate::store::{EvolvingGraphStore, Interval, StoreError};

/// Edge weights of the triangular grid over a window.
///
/// Weights are addition counts. `left_weight([i, j])` labels the edge to
/// `[i, j-1]`, `right_weight([i, j])` the edge to `[i+1, j]`. Common-graph
/// sizes are kept when the grid comes from a store.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularGrid {
    window: Interval,
    left: Vec<u64>,
    right: Vec<u64>,
    common: Option<Vec<u64>>,
}

/// Builds the grid for `window` from the store's presence runs.
///
/// A run covering `[s, e]` (clipped to the window) belongs to the common
/// graph of `[i, j]` exactly when `s <= i` and `j <= e`. It therefore adds
/// one to the left weight of every `[i, e+1]` with `s <= i <= e`, and one to
/// the right weight of every `[s-1, j]` with `s <= j <= e`. No common-graph
/// edge set is ever materialized.
pub fn build_tg(store: &EvolvingGraphStore, window: Interval) -> Result<TriangularGrid, StoreError> {
    store.check_interval(window)?;
    let m = window.len();
    let mut tg = TriangularGrid::zeroed(window);
    // span[s][e]: runs whose clipped extent is exactly [s, e]
    let mut span = vec![0u64; m * m];
    for run in store.presence_runs() {
        if run.end < window.lo || run.start > window.hi {
            continue;
        }
        let s = run.start.max(window.lo) - window.lo;
        let e = run.end.min(window.hi) - window.lo;
        span[s * m + e] += 1;
        if run.end < window.hi {
            for i in s..=e {
                tg.left[i * m + e + 1] += 1;
            }
        }
        if run.start > window.lo {
            for j in s..=e {
                tg.right[(s - 1) * m + j] += 1;
            }
        }
    }
    // common[i][j] = Σ span[s][e] over s <= i, e >= j
    let mut common = vec![0u64; m * m];
    for i in 0..m {
        for j in (i..m).rev() {
            let mut c = (0..=i).map(|s| span[s * m + j]).sum::<u64>();
            if j + 1 < m {
                c += common[i * m + j + 1];
            }
            common[i * m + j] = c;
        }
    }
    tg.common = Some(common);
    Ok(tg)
}

impl TriangularGrid {
    fn zeroed(window: Interval) -> Self {
        let m = window.len();
        TriangularGrid { window, left: vec![0; m * m], right: vec![0; m * m], common: None }
    }

    /// A grid with caller-supplied weights, indexed by window-relative
    /// `(i, j)` with `i < j`. Used to study schedules independently of a store.
    pub fn from_weights<L, R>(window: Interval, mut left: L, mut right: R) -> Self
    where
        L: FnMut(usize, usize) -> u64,
        R: FnMut(usize, usize) -> u64,
    {
        let m = window.len();
        let mut tg = TriangularGrid::zeroed(window);
        for i in 0..m {
            for j in i + 1..m {
                tg.left[i * m + j] = left(i, j);
                tg.right[i * m + j] = right(i, j);
            }
        }
        tg
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    /// Number of snapshots `m` in the window.
    pub fn width(&self) -> usize {
        self.window.len()
    }

    /// `m (m + 1) / 2`.
    pub fn node_count(&self) -> usize {
        let m = self.width();
        m * (m + 1) / 2
    }

    /// Levels strictly between the leaves and the root.
    pub fn intermediate_levels(&self) -> usize {
        self.width().saturating_sub(2)
    }

    /// Nodes level by level from the root down to the leaves.
    pub fn nodes(&self) -> impl Iterator<Item = Interval> + '_ {
        let (lo, m) = (self.window.lo, self.width());
        (1..=m).rev().flat_map(move |len| (0..=m - len).map(move |i| Interval::new(lo + i, lo + i + len - 1)))
    }

    fn index(&self, iv: Interval) -> Option<usize> {
        self.window.covers(&iv).then(|| (iv.lo - self.window.lo) * self.width() + (iv.hi - self.window.lo))
    }

    /// Weight of the edge `[i, j] -> [i, j-1]`; `None` for leaves and foreign intervals.
    pub fn left_weight(&self, iv: Interval) -> Option<u64> {
        (!iv.is_single()).then(|| self.index(iv).map(|k| self.left[k])).flatten()
    }

    /// Weight of the edge `[i, j] -> [i+1, j]`.
    pub fn right_weight(&self, iv: Interval) -> Option<u64> {
        (!iv.is_single()).then(|| self.index(iv).map(|k| self.right[k])).flatten()
    }

    /// Size of the common graph of `iv`, when the grid was built from a store.
    pub fn common_size(&self, iv: Interval) -> Option<u64> {
        let k = self.index(iv)?;
        self.common.as_ref().map(|c| c[k])
    }

    /// Window-relative weights, the form the solver works with.
    pub(crate) fn local_left(&self, i: usize, j: usize) -> u64 {
        self.left[i * self.width() + j]
    }

    pub(crate) fn local_right(&self, i: usize, j: usize) -> u64 {
        self.right[i * self.width() + j]
    }
}
