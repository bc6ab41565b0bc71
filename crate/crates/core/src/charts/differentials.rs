//! Differentials `d_k : (stem, s) -> (stem - 1, s + k)` that vanish for
//! degree reasons.
//!
//! A source cell is certified for `d_k` when it is spanned by
//! * classes whose target cell is zero,
//! * `h_0`-multiples of classes in a cell already certified for `d_k`
//!   (`d_k(h_0 x) = h_0 d_k(x)`),
//! * classes killed by `h_0` when `h_0` is injective on the target cell.
//!
//! The rules read the `E_2` page; for `k > 2` they are valid once every
//! shorter differential in the window is certified, which is what
//! [`DifferentialReport::all_zero`] asserts.
//!
//! Targets above the top row cannot be read from the chart. They are taken
//! to be zero when the target column has no dots in its top
//! [`EMPTY_TOP_ROWS`] rows, i.e. it has already dropped below the vanishing
//! line of a column without `h_0`-towers. This is the one rule that is an
//! extrapolation rather than a reading of the chart, and it is reported
//! separately as [`Vanishing::AboveWindow`]. In the same spirit `h_0` is
//! taken to be injective on a top-row cell whose dots all end `h_0`-strings
//! of length at least [`EMPTY_TOP_ROWS`].

use std::collections::BTreeMap;

use super::E2Chart;
use crate::f2linalg::{F2Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vanishing {
    /// The target cell is zero.
    EmptyTarget,
    /// The target lies below the connectivity of the spectrum.
    BelowConnectivity,
    /// Spanned by `h_0`-multiples and `h_0`-annihilated classes as above.
    H0Equivariance,
    /// The target lies above the chart, in a column whose top rows are empty.
    AboveWindow,
    /// Not forced to vanish by the rules.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialDifferential {
    pub stem: i32,
    pub s: usize,
    pub k: usize,
    pub target_dim: Option<usize>,
    pub reason: Vanishing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialReport {
    pub k_max: usize,
    pub cells: Vec<PotentialDifferential>,
}

impl DifferentialReport {
    pub fn all_zero(&self) -> bool {
        self.cells.iter().all(|c| c.reason != Vanishing::Unknown)
    }

    pub fn unknown(&self) -> impl Iterator<Item = &PotentialDifferential> {
        self.cells.iter().filter(|c| c.reason == Vanishing::Unknown)
    }

    /// No uncertified differential leaves `stem` or enters it from `stem + 1`.
    pub fn column_certified(&self, stem: i32) -> bool {
        self.unknown().all(|c| c.stem != stem && c.stem != stem + 1)
    }

    pub fn summary(&self) -> String {
        let unknown: Vec<String> = self.unknown().map(|c| format!("d{} from ({}, {})", c.k, c.stem, c.s)).collect();
        if unknown.is_empty() {
            format!("all differentials d_2..d_{} vanish in the window", self.k_max)
        } else {
            format!("not forced to vanish: {}", unknown.join(", "))
        }
    }
}

/// Number of empty top rows required by [`Vanishing::AboveWindow`].
pub const EMPTY_TOP_ROWS: usize = 3;

fn empty_above(chart: &E2Chart, stem: i32) -> bool {
    let top = chart.window.s_max;
    if stem < chart.window.stem_lo || top + 1 < EMPTY_TOP_ROWS {
        return false;
    }
    (top + 1 - EMPTY_TOP_ROWS..=top).all(|s| chart.dim(stem, s) == 0)
}

fn h0_injective(chart: &E2Chart, stem: i32, s: usize) -> bool {
    if s <= chart.window.s_max && chart.dim(stem, s) == 0 {
        return true;
    }
    if s == chart.window.s_max {
        // Top row: every dot must end an h0-string of length EMPTY_TOP_ROWS.
        if s + 1 < EMPTY_TOP_ROWS {
            return false;
        }
        let mut m = F2Matrix::identity(chart.dim(stem, s + 1 - EMPTY_TOP_ROWS));
        for i in s + 1 - EMPTY_TOP_ROWS..s {
            m = m.mul(&chart.h0_matrix(stem, i));
        }
        return m.rank() == chart.dim(stem, s);
    }
    if s > chart.window.s_max {
        // Above the chart: extrapolate from the top row.
        return h0_injective(chart, stem, chart.window.s_max);
    }
    chart.h0_matrix(stem, s).rank() == chart.dim(stem, s)
}

/// Classify every potential `d_k`, `2 <= k <= k_max`, whose source is a
/// nonempty cell of the chart. Sources in stem `stem_hi + 1` are outside
/// the chart; callers should size the window one stem past what they read.
pub fn forced_zero_differentials(chart: &E2Chart, k_max: usize) -> DifferentialReport {
    let w = chart.window;
    let mut cells = Vec::new();
    for k in 2..=k_max.max(1) {
        // Certified cells for this k, keyed by (stem, s).
        let mut certified: BTreeMap<(i32, usize), bool> = BTreeMap::new();
        for stem in w.stem_lo..=w.stem_hi {
            for s in 0..=w.s_max {
                let dim = chart.dim(stem, s);
                if dim == 0 {
                    continue;
                }
                let ts = stem - 1;
                let tsh = s + k;
                let (reason, target_dim) = if matches!(chart.connectivity, Some(c) if ts < c) {
                    (Vanishing::BelowConnectivity, Some(0))
                } else if ts >= w.stem_lo && tsh <= w.s_max && chart.dim(ts, tsh) == 0 {
                    (Vanishing::EmptyTarget, Some(0))
                } else if tsh > w.s_max && empty_above(chart, ts) {
                    (Vanishing::AboveWindow, None)
                } else {
                    let target_dim = (ts >= w.stem_lo && tsh <= w.s_max).then(|| chart.dim(ts, tsh));
                    let mut span = Subspace::new(dim);
                    if s > 0 && certified.get(&(stem, s - 1)).copied().unwrap_or(false) {
                        let m: F2Matrix = chart.h0_matrix(stem, s - 1);
                        for v in m.row_vectors() {
                            span.add(&v);
                        }
                    }
                    if ts >= w.stem_lo && s < w.s_max && h0_injective(chart, ts, tsh) {
                        for v in chart.h0_matrix(stem, s).left_kernel_basis() {
                            span.add(&v);
                        }
                    }
                    let ok = span.dim() == dim;
                    (if ok { Vanishing::H0Equivariance } else { Vanishing::Unknown }, target_dim)
                };
                certified.insert((stem, s), reason != Vanishing::Unknown);
                cells.push(PotentialDifferential { stem, s, k, target_dim, reason });
            }
        }
    }
    DifferentialReport { k_max, cells }
}
