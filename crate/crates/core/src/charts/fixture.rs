//! Hand-transcribed chart fixtures and their comparison with computed charts.
//!
//! A fixture describes one chart for a residue class of `d`, with stems
//! written relative to `d` (and `r`):
//!
//! ```text
//! name so-r2-odd
//! family SO
//! spectrum mt
//! r 2
//! residue 1 mod 2
//! instances 13 15
//! stems d-1 d+2
//! s-max 3
//! dot d-1 0 1
//! tower d+1 0
//! h0 d+1 1 1
//! h1 d-1 0 1
//! end
//! ```
//!
//! `dot stem s n` gives the number of dots in a cell; cells without a record
//! are empty. `h0 stem s n` is the rank of `h_0` out of the cell, `h1` the
//! rank of `h_1`. `tower stem s` marks an `h_0`-string that continues past
//! the drawn rows. Dots and `h_0` ranks are compared exactly for `s <= s-max`,
//! `h_1` ranks only from below (figures may omit products), and towers must
//! reach the top of the computed chart.

use std::collections::BTreeMap;
use std::fmt;

use super::{build_chart, ChartError, ChartWindow, E2Chart};
use crate::charrings::Family;
use crate::f2linalg::F2Matrix;
use crate::mtmod::{ctheta_module, mt_module, reduced_bundle_module, MtError, TruncatedModule};
use crate::par::Exec;
use crate::resolution::{ext_table, MinimalResolution, ResolutionError};
use crate::tables::expr::{Expr, ExprError};

/// Extra filtrations computed above the drawn rows, used to confirm towers.
pub const TOWER_SLACK: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spectrum {
    /// `MT(d,r)`.
    Mt,
    /// The cofiber `C_θ` inside `MT(d,r)`.
    Ctheta,
    /// `Σ^d B(d)`, the summand of `MT(d,1)` above the Thom class.
    Bundle,
    /// The sphere `S^d`, the summand of `MT(d,1)` on the Thom class.
    Sphere,
}

impl std::str::FromStr for Spectrum {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mt" => Ok(Spectrum::Mt),
            "ctheta" => Ok(Spectrum::Ctheta),
            "bundle" => Ok(Spectrum::Bundle),
            "sphere" => Ok(Spectrum::Sphere),
            _ => Err(format!("unknown spectrum `{s}` (expected mt, ctheta, bundle or sphere)")),
        }
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spectrum::Mt => "mt",
            Spectrum::Ctheta => "ctheta",
            Spectrum::Bundle => "bundle",
            Spectrum::Sphere => "sphere",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ComputeError {
    #[error(transparent)]
    Module(#[from] MtError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Chart(#[from] ChartError),
}

/// The cohomology module of a spectrum, truncated at `t_max`.
pub fn spectrum_module(spectrum: Spectrum, family: Family, d: u32, r: u32, t_max: u32) -> Result<TruncatedModule, MtError> {
    Ok(match spectrum {
        Spectrum::Mt => mt_module(family, d, r, t_max)?.module,
        Spectrum::Ctheta => ctheta_module(family, d, r, t_max)?.0,
        Spectrum::Bundle => reduced_bundle_module(family, d, t_max)?.0,
        Spectrum::Sphere => TruncatedModule::new(format!("S^{d}"), d as i32, vec![vec!["ι".to_string()]], false),
    })
}

/// Resolve and build the chart for `window`. The module is truncated one
/// degree above the top stem, which is the least that keeps every cell of
/// the window exact.
pub fn compute_chart(
    spectrum: Spectrum,
    family: Family,
    d: u32,
    r: u32,
    window: ChartWindow,
    exec: Exec,
) -> Result<E2Chart, ComputeError> {
    let module = spectrum_module(spectrum, family, d, r, (window.stem_hi + 1).max(0) as u32)?;
    let res = MinimalResolution::with_exec(&module, window.s_max, window.stem_hi + window.s_max as i32 + 1, exec)?;
    Ok(build_chart(&ext_table(&res), window)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Dot,
    Tower,
    H0,
    H1,
}

#[derive(Clone, Debug)]
struct Record {
    kind: Kind,
    stem: Expr,
    s: usize,
    n: usize,
    line: usize,
}

#[derive(Clone, Debug)]
pub struct ChartFixture {
    pub name: String,
    pub family: Family,
    pub spectrum: Spectrum,
    pub r: u32,
    /// `(k, m)`: the fixture applies to `d ≡ k mod m`.
    pub residue: (u32, u32),
    pub instances: Vec<u32>,
    pub notes: Vec<String>,
    stems: (Expr, Expr),
    pub s_max: usize,
    records: Vec<Record>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureMismatch {
    Dots { stem: i32, s: usize, expected: usize, found: usize },
    H0 { stem: i32, s: usize, expected: usize, found: usize },
    H1 { stem: i32, s: usize, expected: usize, found: usize },
    Tower { stem: i32, s: usize },
    Residue { d: u32 },
    Expr(String),
}

impl fmt::Display for FixtureMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureMismatch::Dots { stem, s, expected, found } => {
                write!(f, "({stem}, {s}): {found} dots, fixture has {expected}")
            }
            FixtureMismatch::H0 { stem, s, expected, found } => {
                write!(f, "({stem}, {s}): h0 rank {found}, fixture has {expected}")
            }
            FixtureMismatch::H1 { stem, s, expected, found } => {
                write!(f, "({stem}, {s}): h1 rank {found}, fixture needs at least {expected}")
            }
            FixtureMismatch::Tower { stem, s } => write!(f, "({stem}, {s}): no h0 tower reaching the top of the chart"),
            FixtureMismatch::Residue { d } => write!(f, "d = {d} is not in the fixture's residue class"),
            FixtureMismatch::Expr(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureComparison {
    pub mismatches: Vec<FixtureMismatch>,
}

impl FixtureComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> ChartError {
    ChartError::Parse { line, msg: msg.into() }
}

fn vars(d: u32, r: u32) -> BTreeMap<&'static str, i64> {
    BTreeMap::from([("d", d as i64), ("r", r as i64)])
}

impl ChartFixture {
    pub fn parse(text: &str) -> Result<ChartFixture, ChartError> {
        let mut name = None;
        let mut family = None;
        let mut spectrum = None;
        let mut r = None;
        let mut residue = None;
        let mut instances = Vec::new();
        let mut notes = Vec::new();
        let mut stems = None;
        let mut s_max = None;
        let mut records = Vec::new();
        let mut ended = false;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if ended {
                return Err(parse_err(ln, "content after `end`"));
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let int = |s: &str| s.parse::<u32>().map_err(|_| parse_err(ln, format!("expected an integer, got `{s}`")));
            match head {
                "name" => name = Some(rest.to_string()),
                "family" => family = Some(rest.parse::<Family>().map_err(|e| parse_err(ln, e))?),
                "spectrum" => spectrum = Some(rest.parse::<Spectrum>().map_err(|e| parse_err(ln, e))?),
                "r" => r = Some(int(rest)?),
                "residue" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 3 || f[1] != "mod" {
                        return Err(parse_err(ln, "residue needs `k mod m`"));
                    }
                    let (k, m) = (int(f[0])?, int(f[2])?);
                    if m == 0 || k >= m {
                        return Err(parse_err(ln, "residue needs 0 <= k < m"));
                    }
                    residue = Some((k, m));
                }
                "instances" => {
                    for f in rest.split_whitespace() {
                        instances.push(int(f)?);
                    }
                }
                "note" => notes.push(rest.to_string()),
                "stems" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 2 {
                        return Err(parse_err(ln, "stems needs two expressions without spaces"));
                    }
                    let e = |s: &str| Expr::parse(s).map_err(|e| parse_err(ln, e.to_string()));
                    stems = Some((e(f[0])?, e(f[1])?));
                }
                "s-max" => s_max = Some(int(rest)? as usize),
                "dot" | "tower" | "h0" | "h1" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    let want = if head == "tower" { 2 } else { 3 };
                    if f.len() != want {
                        return Err(parse_err(ln, format!("`{head}` takes {want} fields")));
                    }
                    let stem = Expr::parse(f[0]).map_err(|e| parse_err(ln, e.to_string()))?;
                    let s = int(f[1])? as usize;
                    let n = if want == 3 { int(f[2])? as usize } else { 1 };
                    let kind = match head {
                        "dot" => Kind::Dot,
                        "tower" => Kind::Tower,
                        "h0" => Kind::H0,
                        _ => Kind::H1,
                    };
                    records.push(Record { kind, stem, s, n, line: ln });
                }
                "end" => ended = true,
                _ => return Err(parse_err(ln, format!("unknown record `{head}`"))),
            }
        }
        if !ended {
            return Err(parse_err(text.lines().count(), "missing `end`"));
        }
        let missing = |what: &str| parse_err(0, format!("missing `{what}`"));
        let fx = ChartFixture {
            name: name.ok_or_else(|| missing("name"))?,
            family: family.ok_or_else(|| missing("family"))?,
            spectrum: spectrum.ok_or_else(|| missing("spectrum"))?,
            r: r.ok_or_else(|| missing("r"))?,
            residue: residue.unwrap_or((0, 1)),
            instances,
            notes,
            stems: stems.ok_or_else(|| missing("stems"))?,
            s_max: s_max.ok_or_else(|| missing("s-max"))?,
            records,
        };
        for &d in &fx.instances {
            if !fx.applies_to(d) {
                return Err(parse_err(0, format!("instance d = {d} is outside residue {} mod {}", fx.residue.0, fx.residue.1)));
            }
        }
        Ok(fx)
    }

    pub fn applies_to(&self, d: u32) -> bool {
        d % self.residue.1 == self.residue.0
    }

    /// The drawn stems for this `d`, and the chart window used to check
    /// them (with [`TOWER_SLACK`] extra rows).
    pub fn window(&self, d: u32) -> Result<ChartWindow, ExprError> {
        let v = vars(d, self.r);
        let lo = self.stems.0.eval(&v)? as i32;
        let hi = self.stems.1.eval(&v)? as i32;
        Ok(ChartWindow::new(lo, hi, self.s_max + TOWER_SLACK))
    }

    pub fn compute(&self, d: u32, exec: Exec) -> Result<E2Chart, ComputeError> {
        let window = self.window(d).map_err(|e| ChartError::Parse { line: 0, msg: e.to_string() })?;
        compute_chart(self.spectrum, self.family, d, self.r, window, exec)
    }
}

fn h0_power(chart: &E2Chart, stem: i32, s: usize, k: usize) -> F2Matrix {
    let mut m = F2Matrix::identity(chart.dim(stem, s));
    for i in 0..k {
        m = m.mul(&chart.h0_matrix(stem, s + i));
    }
    m
}

/// Compare a computed chart for `d` with the fixture.
pub fn compare_chart_fixture(fixture: &ChartFixture, chart: &E2Chart, d: u32) -> FixtureComparison {
    let mut out = FixtureComparison::default();
    if !fixture.applies_to(d) {
        out.mismatches.push(FixtureMismatch::Residue { d });
        return out;
    }
    let window = match fixture.window(d) {
        Ok(w) => w,
        Err(e) => {
            out.mismatches.push(FixtureMismatch::Expr(e.to_string()));
            return out;
        }
    };
    let v = vars(d, fixture.r);
    let mut dots: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    let mut h0: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    let mut h1: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    let mut towers: BTreeMap<(i32, usize), usize> = BTreeMap::new();
    for rec in &fixture.records {
        let stem = match rec.stem.eval(&v) {
            Ok(x) => x as i32,
            Err(e) => {
                out.mismatches.push(FixtureMismatch::Expr(format!("line {}: {e}", rec.line)));
                continue;
            }
        };
        let map = match rec.kind {
            Kind::Dot => &mut dots,
            Kind::H0 => &mut h0,
            Kind::H1 => &mut h1,
            Kind::Tower => &mut towers,
        };
        *map.entry((stem, rec.s)).or_insert(0) += rec.n;
    }
    let top = fixture.s_max;
    for stem in window.stem_lo..=window.stem_hi {
        for s in 0..=top {
            let expected = dots.get(&(stem, s)).copied().unwrap_or(0);
            let found = chart.dim(stem, s);
            if expected != found {
                out.mismatches.push(FixtureMismatch::Dots { stem, s, expected, found });
            }
            if s < top {
                let expected = h0.get(&(stem, s)).copied().unwrap_or(0);
                let found = chart.h0_rank(stem, s);
                if expected != found {
                    out.mismatches.push(FixtureMismatch::H0 { stem, s, expected, found });
                }
            }
        }
    }
    for (&(stem, s), &expected) in &h1 {
        let found = chart.h1_rank(stem, s);
        if found < expected {
            out.mismatches.push(FixtureMismatch::H1 { stem, s, expected, found });
        }
    }
    for (&(stem, s), &count) in &towers {
        let k = chart.window.s_max.saturating_sub(s);
        if h0_power(chart, stem, s, k).rank() < count {
            out.mismatches.push(FixtureMismatch::Tower { stem, s });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SO_R1_BUNDLE: &str = "\
name bundle
family SO
spectrum bundle
r 1
residue 0 mod 1
instances 14
stems d+2 d+5
s-max 3
dot d+2 0 1
dot d+4 0 1
dot d+4 1 1
dot d+4 2 1
dot d+4 3 1
tower d+4 1
h0 d+4 1 1
h0 d+4 2 1
dot d+5 1 1
end
";

    #[test]
    fn parse_and_compare() {
        let fx = ChartFixture::parse(SO_R1_BUNDLE).unwrap();
        assert_eq!(fx.window(14).unwrap(), ChartWindow::new(16, 19, 3 + TOWER_SLACK));
        let chart = fx.compute(14, Exec::Sequential).unwrap();
        let cmp = compare_chart_fixture(&fx, &chart, 14);
        assert!(cmp.passed(), "{:?}", cmp.mismatches);
    }

    #[test]
    fn detects_a_wrong_dot() {
        let text = SO_R1_BUNDLE.replace("dot d+5 1 1", "dot d+5 1 2");
        let fx = ChartFixture::parse(&text).unwrap();
        let chart = fx.compute(14, Exec::Sequential).unwrap();
        let cmp = compare_chart_fixture(&fx, &chart, 14);
        assert_eq!(cmp.mismatches, vec![FixtureMismatch::Dots { stem: 19, s: 1, expected: 2, found: 1 }]);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(ChartFixture::parse("name x\nend\n").is_err());
        let wrong_instance = SO_R1_BUNDLE.replace("residue 0 mod 1", "residue 1 mod 2");
        assert!(ChartFixture::parse(&wrong_instance).is_err());
        assert!(ChartFixture::parse(&SO_R1_BUNDLE.replace("dot d+2 0 1", "dot d+2 0")).is_err());
    }
}
