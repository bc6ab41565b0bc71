//! Chart output.
//!
//! The structured format is line based:
//!
//! ```text
//! chart MTSO(14,2)
//! window 13 17 5
//! connectivity 13
//! dot 13 0 1
//! edge h0 13 0 13 1 rank 1 matrix 1
//! edge h1 15 1 16 2 rank 1 matrix 10
//! end
//! ```
//!
//! Matrix rows are bit strings separated by `/`. `parse_structured` inverts
//! `render(.., Structured)` exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{ChartError, ChartWindow, E2Chart};
use crate::f2linalg::F2Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
    Structured,
}

impl std::str::FromStr for RenderFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ascii" => Ok(RenderFormat::Ascii),
            "svg" => Ok(RenderFormat::Svg),
            "structured" | "text" => Ok(RenderFormat::Structured),
            _ => Err(format!("unknown format `{s}` (expected ascii, svg or structured)")),
        }
    }
}

pub fn render(chart: &E2Chart, format: RenderFormat) -> String {
    match format {
        RenderFormat::Ascii => ascii(chart),
        RenderFormat::Svg => svg(chart),
        RenderFormat::Structured => structured(chart),
    }
}

const CELL: usize = 4;

fn ascii(chart: &E2Chart) -> String {
    let w = chart.window;
    let ncols = (w.stem_hi - w.stem_lo + 1).max(0) as usize;
    let width = ncols * CELL;
    let mut out = String::new();
    let _ = writeln!(out, "{}  stems {}..{}, s <= {}", chart.label, w.stem_lo, w.stem_hi, w.s_max);
    for s in (0..=w.s_max).rev() {
        if s < w.s_max {
            let mut conn = vec![' '; width];
            for (i, stem) in (w.stem_lo..=w.stem_hi).enumerate() {
                let x = i * CELL + 1;
                if chart.h0_rank(stem, s) > 0 {
                    conn[x] = '|';
                }
                if chart.h1_rank(stem, s) > 0 && x + 2 < width {
                    conn[x + 2] = '╱';
                }
            }
            let line: String = conn.into_iter().collect();
            let _ = writeln!(out, "     {}", line.trim_end());
        }
        let mut row = vec![' '; width];
        for (i, stem) in (w.stem_lo..=w.stem_hi).enumerate() {
            let x = i * CELL + 1;
            row[x] = match chart.dim(stem, s) {
                0 => '·',
                1 => '•',
                n if n < 10 => char::from_digit(n as u32, 10).unwrap_or('*'),
                _ => '*',
            };
        }
        let line: String = row.into_iter().collect();
        let _ = writeln!(out, "{s:>3}  {}", line.trim_end());
    }
    let mut axis = String::new();
    for stem in w.stem_lo..=w.stem_hi {
        let _ = write!(axis, "{:<width$}", stem, width = CELL);
    }
    let _ = writeln!(out, "     {}", axis.trim_end());
    out
}

const SVG_UNIT: f64 = 48.0;
const SVG_MARGIN: f64 = 40.0;
const SVG_DOT: f64 = 3.5;
const SVG_SPREAD: f64 = 8.0;

fn svg(chart: &E2Chart) -> String {
    let w = chart.window;
    let ncols = (w.stem_hi - w.stem_lo + 1).max(0) as f64;
    let width = 2.0 * SVG_MARGIN + ncols * SVG_UNIT;
    let height = 2.0 * SVG_MARGIN + (w.s_max as f64 + 1.0) * SVG_UNIT;
    let pos = |stem: i32, s: usize, i: usize, n: usize| -> (f64, f64) {
        let x = SVG_MARGIN + ((stem - w.stem_lo) as f64 + 0.5) * SVG_UNIT + (i as f64 - (n as f64 - 1.0) / 2.0) * SVG_SPREAD;
        let y = height - SVG_MARGIN - (s as f64 + 0.5) * SVG_UNIT;
        (x, y)
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<title>{}</title>"#, xml_escape(&chart.label));
    let (ox, oy) = (SVG_MARGIN, height - SVG_MARGIN);
    let _ = writeln!(out, r#"<line x1="{ox}" y1="{oy}" x2="{}" y2="{oy}" stroke="black"/>"#, width - SVG_MARGIN / 2.0);
    let _ = writeln!(out, r#"<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{}" stroke="black"/>"#, SVG_MARGIN / 2.0);
    for stem in w.stem_lo..=w.stem_hi {
        let (x, _) = pos(stem, 0, 0, 1);
        let _ = writeln!(out, r#"<text x="{x}" y="{}" font-size="11" text-anchor="middle">{stem}</text>"#, oy + 16.0);
    }
    for s in 0..=w.s_max {
        let (_, y) = pos(w.stem_lo, s, 0, 1);
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="11" text-anchor="end">{s}</text>"#, ox - 6.0, y + 4.0);
    }
    for (kind, edges, dn) in [("h0", &chart.h0, 0), ("h1", &chart.h1, 1)] {
        for (&(stem, s), m) in edges {
            let (na, nb) = (m.rows(), m.cols());
            for a in 0..na {
                for b in 0..nb {
                    if m.get(a, b) {
                        let (x1, y1) = pos(stem, s, a, na);
                        let (x2, y2) = pos(stem + dn, s + 1, b, nb);
                        let _ = writeln!(
                            out,
                            r#"<line class="{kind}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>"#
                        );
                    }
                }
            }
        }
    }
    for (&(stem, s), &n) in &chart.dots {
        for i in 0..n {
            let (x, y) = pos(stem, s, i, n);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{SVG_DOT}"/>"#);
        }
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn matrix_text(m: &F2Matrix) -> String {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| if m.get(i, j) { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("/")
}

fn structured(chart: &E2Chart) -> String {
    let w = chart.window;
    let mut out = String::new();
    let _ = writeln!(out, "chart {}", chart.label);
    let _ = writeln!(out, "window {} {} {}", w.stem_lo, w.stem_hi, w.s_max);
    match chart.connectivity {
        Some(c) => {
            let _ = writeln!(out, "connectivity {c}");
        }
        None => out.push_str("connectivity none\n"),
    }
    for (&(stem, s), &n) in &chart.dots {
        let _ = writeln!(out, "dot {stem} {s} {n}");
    }
    for (kind, edges, dn) in [("h0", &chart.h0, 0), ("h1", &chart.h1, 1)] {
        for (&(stem, s), m) in edges {
            let _ = writeln!(
                out,
                "edge {kind} {stem} {s} {} {} rank {} matrix {}",
                stem + dn,
                s + 1,
                m.rank(),
                matrix_text(m)
            );
        }
    }
    out.push_str("end\n");
    out
}

/// Parse the structured format.
pub fn parse_structured(text: &str) -> Result<E2Chart, ChartError> {
    let err = |line: usize, msg: &str| ChartError::Parse { line, msg: msg.to_string() };
    let mut label = None;
    let mut window = None;
    let mut connectivity = None;
    let mut dots = BTreeMap::new();
    let mut h0 = BTreeMap::new();
    let mut h1 = BTreeMap::new();
    let mut ended = false;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return Err(err(ln, "content after `end`"));
        }
        let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
        let nums = |s: &str| -> Result<Vec<i64>, ChartError> {
            s.split_whitespace().map(|x| x.parse::<i64>().map_err(|_| err(ln, "expected an integer"))).collect()
        };
        match head {
            "chart" => label = Some(rest.to_string()),
            "window" => {
                let v = nums(rest)?;
                if v.len() != 3 || v[2] < 0 {
                    return Err(err(ln, "window needs `stem_lo stem_hi s_max`"));
                }
                window = Some(ChartWindow::new(v[0] as i32, v[1] as i32, v[2] as usize));
            }
            "connectivity" => {
                connectivity = if rest == "none" { None } else { Some(nums(rest)?.first().copied().ok_or_else(|| err(ln, "missing value"))? as i32) };
            }
            "dot" => {
                let v = nums(rest)?;
                if v.len() != 3 || v[1] < 0 || v[2] <= 0 {
                    return Err(err(ln, "dot needs `stem s count`"));
                }
                dots.insert((v[0] as i32, v[1] as usize), v[2] as usize);
            }
            "edge" => {
                let f: Vec<&str> = rest.split_whitespace().collect();
                if f.len() != 9 || f[5] != "rank" || f[7] != "matrix" {
                    return Err(err(ln, "edge needs `kind stem s stem' s' rank n matrix rows`"));
                }
                let v = nums(&f[1..5].join(" "))?;
                let (stem, s, stem2, s2) = (v[0] as i32, v[1] as usize, v[2] as i32, v[3] as usize);
                let dn = match f[0] {
                    "h0" => 0,
                    "h1" => 1,
                    _ => return Err(err(ln, "edge kind must be h0 or h1")),
                };
                if stem2 != stem + dn || s2 != s + 1 {
                    return Err(err(ln, "edge does not have the degree of its kind"));
                }
                let rows: Vec<&str> = f[8].split('/').collect();
                let cols = rows.first().map_or(0, |r| r.len());
                let m = F2Matrix::parse_rows(cols, &rows).ok_or_else(|| err(ln, "bad matrix"))?;
                let rank: usize = f[6].parse().map_err(|_| err(ln, "bad rank"))?;
                if m.rank() != rank {
                    return Err(err(ln, "rank does not match the matrix"));
                }
                if dn == 0 {
                    h0.insert((stem, s), m);
                } else {
                    h1.insert((stem, s), m);
                }
            }
            "end" => ended = true,
            _ => return Err(err(ln, "unknown record")),
        }
    }
    if !ended {
        return Err(err(text.lines().count(), "missing `end`"));
    }
    let chart = E2Chart {
        label: label.ok_or_else(|| err(1, "missing `chart` header"))?,
        window: window.ok_or_else(|| err(1, "missing `window`"))?,
        connectivity,
        dots,
        h0,
        h1,
    };
    chart.check().map_err(|m| err(0, &m))?;
    Ok(chart)
}
