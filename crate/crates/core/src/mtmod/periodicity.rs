//! The degree-shifting map `H^*(MT(d+k,r)) -> H^*(MT(d,r))` for `a_r | k`.
//!
//! A basis monomial of the source has exactly one factor `w_j` with
//! `j > d+k-r` in the window; it is replaced by `w_{j-k}`.

use crate::charrings::{a_r, Family, RingElement, SwMonomial};
use crate::f2linalg::F2Matrix;
use crate::mtmod::builders::{build_mt, check_spin, MtError};
use crate::mtmod::module::ModuleMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeriodicityFailure {
    NotBijective { degree: i32 },
    NotCommuting { degree: i32, square: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicityReport {
    pub family: Family,
    pub d: u32,
    pub r: u32,
    pub k: u32,
    /// Target degrees checked.
    pub window: (i32, i32),
    pub failure: Option<PeriodicityFailure>,
}

impl PeriodicityReport {
    pub fn is_isomorphism(&self) -> bool {
        self.failure.is_none()
    }

    pub fn summary(&self) -> String {
        let head = format!(
            "MT{}({},{}) -> MT{}({},{}) shifted by {}, degrees {}..={}",
            self.family,
            self.d + self.k,
            self.r,
            self.family,
            self.d,
            self.r,
            self.k,
            self.window.0,
            self.window.1
        );
        match &self.failure {
            None => format!("{head}: isomorphism"),
            Some(PeriodicityFailure::NotBijective { degree }) => format!("{head}: not bijective in degree {degree}"),
            Some(PeriodicityFailure::NotCommuting { degree, square }) => {
                format!("{head}: fails to commute with Sq^{square} in degree {degree}")
            }
        }
    }
}

/// Top target degree of the window in which the map is claimed to be an
/// isomorphism.
pub fn periodicity_top(family: Family, d: u32, r: u32) -> u32 {
    match family {
        Family::O | Family::SO => 2 * (d - r + 1),
        Family::Spin => (2 * (d - r) - 1).min(a_r(d - r).saturating_sub(1) as u32),
    }
}

pub fn periodicity_check(family: Family, d: u32, r: u32, k: u32) -> Result<PeriodicityReport, MtError> {
    if r == 0 || r > d {
        return Err(MtError::Parameters(format!("need 1 <= r <= d, got r = {r}, d = {d}")));
    }
    let a = a_r(r);
    if k as u64 % a != 0 {
        return Err(MtError::Parameters(format!("k = {k} is not a multiple of a_{r} = {a}")));
    }
    let top = periodicity_top(family, d, r);
    if family == Family::Spin {
        check_spin(d, r, top)?;
        check_spin(d + k, r, top + k)?;
    }
    if k == 0 {
        return Ok(PeriodicityReport { family, d, r, k, window: ((d - r + 1) as i32, top as i32), failure: None });
    }
    let src = build_mt(family, d + k, r, top + k)?;
    let tgt = build_mt(family, d, r, top)?;
    let lo = (d - r + 1) as i32;
    let mut mats = Vec::new();
    let mut report = PeriodicityReport { family, d, r, k, window: (lo, top as i32), failure: None };
    for t in lo..=top as i32 {
        let ts = t + k as i32;
        let mut m = F2Matrix::zeros(src.module.dim(ts), tgt.module.dim(t));
        for (i, mono) in src.monomials(ts).iter().enumerate() {
            let high: Vec<u16> = mono
                .factors()
                .iter()
                .filter(|f| f.0 as u32 > d + k - r)
                .flat_map(|f| std::iter::repeat(f.0).take(f.1 as usize))
                .collect();
            if high.len() != 1 {
                report.failure = Some(PeriodicityFailure::NotBijective { degree: t });
                return Ok(report);
            }
            let j = high[0];
            let image = mono.without(j).expect("factor present").mul(&SwMonomial::w(j - k as u16));
            let v = tgt.vector_of(&RingElement::monomial(image)).ok_or_else(|| {
                MtError::Parameters(format!("image of {mono} is outside MT{family}({d},{r})"))
            })?;
            for c in v.iter_ones() {
                m.set(i, c, true);
            }
        }
        if m.rows() != m.cols() || m.rank() != m.rows() {
            report.failure = Some(PeriodicityFailure::NotBijective { degree: t });
            return Ok(report);
        }
        mats.push(m);
    }
    // Index matrices by source degree for the commutation check.
    let map = ModuleMap::new(
        src.module.label().to_string(),
        tgt.module.label().to_string(),
        lo + k as i32,
        -(k as i32),
        mats,
    );
    for t in lo..=top as i32 {
        let f_t = map.matrix(t + k as i32).expect("in range");
        for sq in 1..=(top as i32 - t) as u32 {
            let left = src.module.action(sq, t + k as i32)?.mul(map.matrix(t + k as i32 + sq as i32).expect("in range"));
            let right = f_t.mul(&tgt.module.action(sq, t)?);
            if left != right {
                report.failure = Some(PeriodicityFailure::NotCommuting { degree: t, square: sq });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_is_identity() {
        let rep = periodicity_check(Family::SO, 11, 4, 0).unwrap();
        assert!(rep.is_isomorphism());
    }

    #[test]
    fn r_two_period_two() {
        let rep = periodicity_check(Family::SO, 9, 2, 2).unwrap();
        assert!(rep.is_isomorphism(), "{}", rep.summary());
    }

    #[test]
    fn wrong_period_is_rejected() {
        assert!(periodicity_check(Family::SO, 11, 4, 2).is_err());
    }
}
