//! Reading a column of an `E_2 = E_∞` chart as an abelian group.
//!
//! As a graded `F_2[h_0]`-module a column splits into strings. The number of
//! strings starting at `s` with length exactly `L` is read off from the ranks
//! of the composites `h_0^k`:
//! `r_{L-1}(s) - r_L(s) - r_L(s-1) + r_{L+1}(s-1)`.

use std::collections::BTreeMap;
use std::fmt;

use super::{forced_zero_differentials, ChartError, E2Chart};
use crate::f2linalg::F2Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct H0String {
    pub start: usize,
    pub len: usize,
    /// Reaches the top row of the chart, so may continue.
    pub open: bool,
}

impl H0String {
    pub fn top(&self) -> usize {
        self.start + self.len - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DifferentialMode {
    /// The caller declares that no differentials affect the column.
    AssumeNone,
    /// Require every potential differential into and out of the column to be
    /// forced to vanish by [`forced_zero_differentials`].
    Certify,
}

/// 2-primary group read from a column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub stem: i32,
    pub free_rank: usize,
    /// Orders of the finite cyclic summands, descending.
    pub orders: Vec<u64>,
    /// Lengths of open strings that rational rank could not classify; each
    /// is `Z` or `Z/2^m` with `m` at least the recorded length.
    pub open_lengths: Vec<usize>,
    /// Some string could carry a hidden 2-extension into another.
    pub ambiguous: bool,
    pub dots: usize,
    pub strings: usize,
    pub mode: DifferentialMode,
}

impl GroupDescriptor {
    /// `log_2` of the order of the finite part.
    pub fn torsion_log2(&self) -> u32 {
        self.orders.iter().map(|o| o.trailing_zeros()).sum()
    }

    pub fn is_resolved(&self) -> bool {
        self.open_lengths.is_empty()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for _ in 0..self.free_rank {
            parts.push("Z".into());
        }
        for o in &self.orders {
            parts.push(format!("Z/{o}"));
        }
        for l in &self.open_lengths {
            parts.push(format!("[tower >= {l}]"));
        }
        if parts.is_empty() {
            f.write_str("0")?;
        } else {
            f.write_str(&parts.join(" + "))?;
        }
        if self.ambiguous {
            f.write_str(" (extension ambiguous)")?;
        }
        Ok(())
    }
}

/// Composite `h_0^k` from `(stem, s)`.
fn h0_power(chart: &E2Chart, stem: i32, s: usize, k: usize) -> F2Matrix {
    let mut m = F2Matrix::identity(chart.dim(stem, s));
    for i in 0..k {
        m = m.mul(&chart.h0_matrix(stem, s + i));
    }
    m
}

/// Decompose a column into maximal `h_0`-strings.
pub fn column_strings(chart: &E2Chart, stem: i32) -> Vec<H0String> {
    let top = chart.window.s_max;
    // r[s][k] = rank of h0^k from (stem, s), for s + k <= top.
    let r: Vec<Vec<usize>> = (0..=top)
        .map(|s| (0..=(top - s)).map(|k| h0_power(chart, stem, s, k).rank()).collect())
        .collect();
    let rk = |s: isize, k: usize| -> usize {
        if s < 0 {
            return 0;
        }
        let s = s as usize;
        if s + k > top {
            0
        } else {
            r[s][k]
        }
    };
    let mut out = Vec::new();
    for s in 0..=top {
        let si = s as isize;
        for len in 1..=(top - s + 1) {
            let open = s + len - 1 == top;
            let count = if open {
                rk(si, len - 1) - rk(si - 1, len)
            } else {
                rk(si, len - 1) + rk(si - 1, len + 1) - rk(si, len) - rk(si - 1, len)
            };
            for _ in 0..count {
                out.push(H0String { start: s, len, open });
            }
        }
    }
    out
}

fn ambiguous(strings: &[H0String]) -> bool {
    for a in strings.iter().filter(|a| !a.open) {
        for b in strings {
            if std::ptr::eq(a, b) {
                continue;
            }
            if b.open || b.top() >= a.top() + 2 {
                return true;
            }
        }
    }
    false
}

/// Read one column. `rational_rank` is the rank of the rational homotopy in
/// this stem when known.
pub fn group_of_column(
    chart: &E2Chart,
    stem: i32,
    rational_rank: Option<usize>,
    mode: DifferentialMode,
) -> Result<GroupDescriptor, ChartError> {
    if stem < chart.window.stem_lo || stem > chart.window.stem_hi {
        return Err(ChartError::StemOutside { stem });
    }
    if mode == DifferentialMode::Certify {
        let report = forced_zero_differentials(chart, chart.window.s_max);
        if !report.column_certified(stem) {
            return Err(ChartError::Uncertified { stem });
        }
    }
    let strings = column_strings(chart, stem);
    let open: Vec<&H0String> = strings.iter().filter(|s| s.open).collect();
    let mut orders: Vec<u64> = strings.iter().filter(|s| !s.open).map(|s| 1u64 << s.len).collect();
    let mut free_rank = 0;
    let mut open_lengths = Vec::new();
    match rational_rank {
        Some(rank) => {
            if open.len() != rank {
                return Err(ChartError::RankMismatch { stem, open: open.len(), rank });
            }
            free_rank = rank;
        }
        None => open_lengths = open.iter().map(|s| s.len).collect(),
    }
    orders.sort_unstable_by(|a, b| b.cmp(a));
    Ok(GroupDescriptor {
        stem,
        free_rank,
        orders,
        open_lengths,
        ambiguous: ambiguous(&strings),
        dots: chart.column(stem).iter().sum(),
        strings: strings.len(),
        mode,
    })
}

/// Read every column of the chart. Stems missing from `ranks` are treated
/// as having unknown rational rank.
pub fn groups_from_columns(
    chart: &E2Chart,
    ranks: &BTreeMap<i32, usize>,
    mode: DifferentialMode,
) -> Result<BTreeMap<i32, GroupDescriptor>, ChartError> {
    let mut out = BTreeMap::new();
    for stem in chart.window.stem_lo..=chart.window.stem_hi {
        out.insert(stem, group_of_column(chart, stem, ranks.get(&stem).copied(), mode)?);
    }
    Ok(out)
}
