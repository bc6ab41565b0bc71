//! Rational (and mod 3) dimensions of `H^*(MT(d,r))`.
//!
//! Over a field `F` with 2 invertible the cohomology is free over
//! `H^*(BSO(d); F)` on `φ(δ e_{d-r})` in degree `d-r+1` (present when `d-r`
//! is even) and `φ(e'_d)` in degree `d` (present when `d` is even).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::charrings::{CoefficientField, Family, PontryaginRing};
use crate::mtmod::builders::MtError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RationalPart {
    /// `MT(d,r)` itself.
    Mt,
    /// The submodule `C_θ = H^{>0}(B) · H^*(MT(d,r))`.
    CTheta,
    /// The quotient `ΣV_{d,r}`.
    V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    pub field: CoefficientField,
    pub t_min: i32,
    pub t_max: i32,
    pub dims: BTreeMap<i32, usize>,
    /// Free generators and their degrees.
    pub generators: Vec<(String, i32)>,
}

impl DimensionTable {
    pub fn dim(&self, t: i32) -> usize {
        self.dims.get(&t).copied().unwrap_or(0)
    }

    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "dimensions {}", self.field);
        let _ = writeln!(s, "degrees {} {}", self.t_min, self.t_max);
        for (g, t) in &self.generators {
            let _ = writeln!(s, "generator {g} {t}");
        }
        for (t, n) in &self.dims {
            let _ = writeln!(s, "dim {t} {n}");
        }
        s.push_str("end\n");
        s
    }
}

pub fn rational_dimensions(
    family: Family,
    d: u32,
    r: u32,
    t_max: u32,
    field: CoefficientField,
    part: RationalPart,
) -> Result<DimensionTable, MtError> {
    if family == Family::O {
        return Err(MtError::Parameters("rational dimensions are modelled for oriented families only".into()));
    }
    if r == 0 || r > d {
        return Err(MtError::Parameters(format!("need 1 <= r <= d, got r = {r}, d = {d}")));
    }
    let limit = 2 * (d - r) as i64 + 1;
    if t_max as i64 > limit {
        return Err(MtError::Window {
            bound: "t_max <= 2(d-r)+1 (free module description over H*(BSO(d);F))",
            value: t_max as i64,
            limit,
        });
    }
    let ring = PontryaginRing::new(field, d, t_max);
    let mut generators = Vec::new();
    if (d - r) % 2 == 0 {
        generators.push(("φ(δe)".to_string(), (d - r + 1) as i32));
    }
    if d % 2 == 0 {
        generators.push(("φ(e')".to_string(), d as i32));
    }
    let t_min = (d - r + 1) as i32;
    let mut dims = BTreeMap::new();
    for t in t_min..=t_max as i32 {
        let mt: usize = generators
            .iter()
            .filter(|g| g.1 <= t)
            .map(|g| ring.dim((t - g.1) as u32))
            .sum();
        let gens_here = generators.iter().filter(|g| g.1 == t).count();
        let n = match part {
            RationalPart::Mt => mt,
            RationalPart::CTheta => mt - gens_here,
            RationalPart::V => gens_here,
        };
        dims.insert(t, n);
    }
    Ok(DimensionTable { field, t_min, t_max: t_max as i32, dims, generators })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_d_r_two() {
        let t = rational_dimensions(Family::SO, 14, 2, 25, CoefficientField::Q, RationalPart::Mt).unwrap();
        assert_eq!(t.dim(13), 1);
        assert_eq!(t.dim(14), 1);
        assert_eq!(t.dim(15), 0);
        assert_eq!(t.dim(17), 1);
    }

    #[test]
    fn odd_d_even_r_is_zero() {
        let t = rational_dimensions(Family::SO, 15, 4, 23, CoefficientField::Q, RationalPart::Mt).unwrap();
        assert!(t.dims.values().all(|&n| n == 0));
    }
}
