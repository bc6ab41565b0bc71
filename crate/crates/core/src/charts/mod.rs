//! Adams `E_2` charts: dots in `(stem, s)` with `h_0` and `h_1` products,
//! rendering, degree-forced vanishing of differentials, and the reading of
//! columns as abelian groups.

mod differentials;
mod fixture;
mod groups;
mod render;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::f2linalg::F2Matrix;
use crate::resolution::ExtTable;

pub use differentials::{forced_zero_differentials, DifferentialReport, PotentialDifferential, Vanishing, EMPTY_TOP_ROWS};
pub use fixture::{
    compare_chart_fixture, compute_chart, spectrum_module, ChartFixture, ComputeError, FixtureComparison, FixtureMismatch, Spectrum,
    TOWER_SLACK,
};
pub use groups::{column_strings, group_of_column, groups_from_columns, DifferentialMode, GroupDescriptor, H0String};
pub use render::{parse_structured, render, RenderFormat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("cell (stem {stem}, s {s}) lies outside the exact window of {label}")]
    Window { label: String, stem: i32, s: usize },
    #[error("stem {stem}: {open} open h0-strings but rational rank {rank}")]
    RankMismatch { stem: i32, open: usize, rank: usize },
    #[error("stem {stem}: differentials are not forced to vanish")]
    Uncertified { stem: i32 },
    #[error("stem {stem} is outside the chart window")]
    StemOutside { stem: i32 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChartWindow {
    pub stem_lo: i32,
    pub stem_hi: i32,
    pub s_max: usize,
}

impl ChartWindow {
    pub fn new(stem_lo: i32, stem_hi: i32, s_max: usize) -> Self {
        ChartWindow { stem_lo, stem_hi, s_max }
    }

    pub fn contains(&self, stem: i32, s: usize) -> bool {
        stem >= self.stem_lo && stem <= self.stem_hi && s <= self.s_max
    }
}

/// Cells are keyed by `(stem, s)`. Edge matrices are stored only when
/// nonzero: `h0[(n, s)]` maps `(n, s)` to `(n, s+1)`, `h1[(n, s)]` maps
/// `(n, s)` to `(n+1, s+1)`, in the row convention of [`F2Matrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E2Chart {
    pub label: String,
    pub window: ChartWindow,
    /// Stems below this are zero; `None` means the whole chart is zero.
    pub connectivity: Option<i32>,
    pub dots: BTreeMap<(i32, usize), usize>,
    pub h0: BTreeMap<(i32, usize), F2Matrix>,
    pub h1: BTreeMap<(i32, usize), F2Matrix>,
}

impl E2Chart {
    pub fn empty(label: impl Into<String>, window: ChartWindow) -> Self {
        E2Chart {
            label: label.into(),
            window,
            connectivity: None,
            dots: BTreeMap::new(),
            h0: BTreeMap::new(),
            h1: BTreeMap::new(),
        }
    }

    pub fn dim(&self, stem: i32, s: usize) -> usize {
        self.dots.get(&(stem, s)).copied().unwrap_or(0)
    }

    /// Whether the cell is known to be zero (inside the window and empty,
    /// or below the connectivity).
    pub fn known_zero(&self, stem: i32, s: usize) -> bool {
        match self.connectivity {
            None => true,
            Some(c) if stem < c => true,
            _ => self.window.contains(stem, s) && self.dim(stem, s) == 0,
        }
    }

    pub fn h0_matrix(&self, stem: i32, s: usize) -> F2Matrix {
        self.h0
            .get(&(stem, s))
            .cloned()
            .unwrap_or_else(|| F2Matrix::zeros(self.dim(stem, s), self.dim(stem, s + 1)))
    }

    pub fn h1_matrix(&self, stem: i32, s: usize) -> F2Matrix {
        self.h1
            .get(&(stem, s))
            .cloned()
            .unwrap_or_else(|| F2Matrix::zeros(self.dim(stem, s), self.dim(stem + 1, s + 1)))
    }

    pub fn h0_rank(&self, stem: i32, s: usize) -> usize {
        self.h0.get(&(stem, s)).map_or(0, |m| m.rank())
    }

    pub fn h1_rank(&self, stem: i32, s: usize) -> usize {
        self.h1.get(&(stem, s)).map_or(0, |m| m.rank())
    }

    /// Dot counts in one stem, indexed by `s`.
    pub fn column(&self, stem: i32) -> Vec<usize> {
        (0..=self.window.s_max).map(|s| self.dim(stem, s)).collect()
    }

    pub fn total_dots(&self) -> usize {
        self.dots.values().sum()
    }

    /// Check that edges join existing dots inside the window.
    pub fn check(&self) -> Result<(), String> {
        for (&(n, s), &c) in &self.dots {
            if !self.window.contains(n, s) || c == 0 {
                return Err(format!("dot record ({n}, {s}) x{c} is outside the window or empty"));
            }
        }
        for (kind, edges, dn) in [("h0", &self.h0, 0), ("h1", &self.h1, 1)] {
            for (&(n, s), m) in edges {
                if !self.window.contains(n + dn, s + 1) {
                    return Err(format!("{kind} edge from ({n}, {s}) leaves the window"));
                }
                if m.rows() != self.dim(n, s) || m.cols() != self.dim(n + dn, s + 1) || m.is_zero() {
                    return Err(format!("{kind} edge from ({n}, {s}) has the wrong shape or is zero"));
                }
            }
        }
        Ok(())
    }
}

/// Assemble the chart for `window` from an Ext table. Every cell of the
/// window must be exactly known.
pub fn build_chart(ext: &ExtTable, window: ChartWindow) -> Result<E2Chart, ChartError> {
    let mut chart = E2Chart::empty(ext.label.clone(), window);
    chart.connectivity = ext.connectivity;
    for stem in window.stem_lo..=window.stem_hi {
        for s in 0..=window.s_max {
            let t = stem + s as i32;
            let below = match ext.connectivity {
                None => true,
                Some(c) => stem < c,
            };
            let dim = match ext.dim(s, t) {
                Some(v) => v,
                None if below => 0,
                None => return Err(ChartError::Window { label: ext.label.clone(), stem, s }),
            };
            if dim > 0 {
                chart.dots.insert((stem, s), dim);
            }
        }
    }
    for stem in window.stem_lo..=window.stem_hi {
        for s in 0..window.s_max {
            let t = stem + s as i32;
            if let Some(m) = ext.h0.get(&(s, t)) {
                if !m.is_zero() {
                    chart.h0.insert((stem, s), m.clone());
                }
            }
            if stem < window.stem_hi {
                if let Some(m) = ext.h1.get(&(s, t)) {
                    if !m.is_zero() {
                        chart.h1.insert((stem, s), m.clone());
                    }
                }
            }
        }
    }
    Ok(chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mtmod::TruncatedModule;
    use crate::resolution::{ext_table, MinimalResolution};

    pub(crate) fn sphere_chart(stem_hi: i32, s_max: usize) -> E2Chart {
        let res = MinimalResolution::new(&TruncatedModule::sphere(), s_max, stem_hi + s_max as i32 + 1).unwrap();
        build_chart(&ext_table(&res), ChartWindow::new(0, stem_hi, s_max)).unwrap()
    }

    #[test]
    fn sphere_stems_to_three() {
        let c = sphere_chart(3, 2);
        c.check().unwrap();
        // h0 tower, h1, h1^2, and h2, h0h2 at stem 3.
        assert_eq!(c.column(0), vec![1, 1, 1]);
        assert_eq!(c.column(1), vec![0, 1, 0]);
        assert_eq!(c.column(2), vec![0, 0, 1]);
        assert_eq!(c.column(3), vec![0, 1, 1]);
        assert_eq!(c.total_dots(), 7);
        assert_eq!(c.h0.len(), 3);
        assert_eq!(c.h1_rank(0, 0), 1);
        assert_eq!(c.h1_rank(1, 1), 1);
    }

    #[test]
    fn window_beyond_resolution_is_rejected() {
        let res = MinimalResolution::new(&TruncatedModule::sphere(), 2, 4).unwrap();
        let err = build_chart(&ext_table(&res), ChartWindow::new(0, 5, 2)).unwrap_err();
        assert!(matches!(err, ChartError::Window { .. }));
    }

    #[test]
    fn zero_module_gives_empty_chart() {
        let m = TruncatedModule::zero("0", 0, 4);
        let res = MinimalResolution::new(&m, 2, 6).unwrap();
        let c = build_chart(&ext_table(&res), ChartWindow::new(0, 3, 2)).unwrap();
        assert_eq!(c.total_dots(), 0);
        assert!(c.known_zero(2, 1));
    }
}
