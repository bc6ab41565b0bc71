//! Mod 2 cohomology of `BO(d)`, `BSO(d)` and `BSpin(d)` with the Steenrod
//! action, in a finite range of degrees.
//!
//! Squares of Stiefel-Whitney classes come from the Wu formula and are
//! extended to monomials with the Cartan formula. The spin ring is the
//! quotient of the oriented ring by the ideal generated by `w_2` and its
//! iterated squares `Sq^{2^i} ... Sq^2 Sq^1 w_2`, which is only a faithful
//! model below degree `a_d`.

pub mod pontryagin;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Mutex;

use thiserror::Error;

use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::steenrod::binom2_signed;

pub use pontryagin::{p1_power_action, CoefficientField, PontryaginElement, PontryaginMonomial, PontryaginRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    O,
    SO,
    Spin,
}

impl Family {
    /// Index of the lowest nonzero Stiefel-Whitney class.
    pub fn lowest_class(self) -> u16 {
        match self {
            Family::O => 1,
            Family::SO | Family::Spin => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::O => "O",
            Family::SO => "SO",
            Family::Spin => "Spin",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "o" => Ok(Family::O),
            "so" => Ok(Family::SO),
            "spin" => Ok(Family::Spin),
            _ => Err(format!("unknown family `{s}` (expected O, SO or Spin)")),
        }
    }
}

/// `a_r`: 1, 2, 4, 4, 8, 8, 8, 8 for `r = 1..=8` and `a_{r+8} = 16 a_r`.
pub fn a_r(r: u32) -> u64 {
    const BASE: [u64; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    assert!(r >= 1, "a_r is defined for r >= 1");
    let (q, m) = ((r - 1) / 8, (r - 1) % 8);
    BASE[m as usize].saturating_mul(16u64.saturating_pow(q))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("degree {degree} is outside the ring truncation t_max = {t_max}")]
    OutOfRange { degree: u32, t_max: u32 },
    #[error("spin ring needs t_max < a_d = {a_d}, got t_max = {t_max}")]
    SpinRange { t_max: u32, a_d: u64 },
    #[error("class w_{index} does not exist for d = {d}")]
    BadIndex { index: u32, d: u32 },
    #[error("ideal J_d is not closed under Sq^{k} in degree {degree}")]
    NotClosed { k: u32, degree: u32 },
}

/// Monomial in Stiefel-Whitney classes: sorted `(index, multiplicity)` pairs
/// with positive multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SwMonomial(Vec<(u16, u16)>);

impl SwMonomial {
    pub fn one() -> Self {
        SwMonomial(Vec::new())
    }

    pub fn w(i: u16) -> Self {
        SwMonomial(vec![(i, 1)])
    }

    /// Build from `(index, multiplicity)` pairs in any order; zero
    /// multiplicities are dropped and repeated indices merged.
    pub fn from_pairs(pairs: &[(u16, u16)]) -> Self {
        let mut m = SwMonomial::one();
        for &(i, e) in pairs {
            for _ in 0..e {
                m = m.mul(&SwMonomial::w(i));
            }
        }
        m
    }

    pub fn factors(&self) -> &[(u16, u16)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(i, e)| i as u32 * e as u32).sum()
    }

    pub fn exponent(&self, i: u16) -> u16 {
        self.0.iter().find(|p| p.0 == i).map_or(0, |p| p.1)
    }

    pub fn max_index(&self) -> u16 {
        self.0.last().map_or(0, |p| p.0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &SwMonomial) -> SwMonomial {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => {
                        out.push(x);
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push(y);
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((x.0, x.1 + y.1));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    out.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        SwMonomial(out)
    }

    /// Remove one factor `w_i`; `None` if it does not divide.
    pub fn without(&self, i: u16) -> Option<SwMonomial> {
        let pos = self.0.iter().position(|p| p.0 == i)?;
        let mut v = self.0.clone();
        if v[pos].1 == 1 {
            v.remove(pos);
        } else {
            v[pos].1 -= 1;
        }
        Some(SwMonomial(v))
    }

    /// Exponent vector `(e_1, ..., e_d)`.
    pub fn exponents(&self, d: u16) -> Vec<u16> {
        let mut e = vec![0; d as usize];
        for &(i, m) in &self.0 {
            e[i as usize - 1] = m;
        }
        e
    }

    /// Layout order used for every basis: decreasing lexicographic order of
    /// the exponent vector `(e_1, e_2, ...)`.
    pub fn basis_cmp(&self, other: &SwMonomial) -> Ordering {
        let (mut a, mut b) = (self.0.iter(), other.0.iter());
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(x), Some(y)) => {
                    if x.0 != y.0 {
                        // The one with the smaller index has a positive exponent
                        // where the other has zero.
                        return x.0.cmp(&y.0);
                    }
                    if x.1 != y.1 {
                        return y.1.cmp(&x.1);
                    }
                }
            }
        }
    }
}

impl fmt::Display for SwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &(i, e) in &self.0 {
            if e == 1 {
                write!(f, "w{i}")?;
            } else {
                write!(f, "w{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Homogeneous polynomial over GF(2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElement {
    pub degree: u32,
    pub terms: BTreeSet<SwMonomial>,
}

impl RingElement {
    pub fn zero(degree: u32) -> Self {
        RingElement { degree, terms: BTreeSet::new() }
    }

    pub fn one() -> Self {
        Self::monomial(SwMonomial::one())
    }

    pub fn monomial(m: SwMonomial) -> Self {
        RingElement { degree: m.degree(), terms: BTreeSet::from([m]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn toggle(&mut self, m: SwMonomial) {
        debug_assert_eq!(m.degree(), self.degree);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        if other.is_zero() {
            return;
        }
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        for m in &other.terms {
            self.toggle(m.clone());
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = other.degree;
        }
        out.add_assign(other);
        out
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        let mut out = RingElement::zero(self.degree + other.degree);
        let mut acc: HashMap<SwMonomial, bool> = HashMap::new();
        for a in &self.terms {
            for b in &other.terms {
                *acc.entry(a.mul(b)).or_insert(false) ^= true;
            }
        }
        out.terms = acc.into_iter().filter(|e| e.1).map(|e| e.0).collect();
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<&SwMonomial> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.basis_cmp(b));
        let parts: Vec<String> = terms.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Monomials of degree `t` in `w_lo, ..., w_hi`, in basis order.
pub fn monomials_of_degree(t: u32, lo: u16, hi: u16) -> Vec<SwMonomial> {
    fn rec(rem: u32, idx: u16, lo: u16, cur: &mut Vec<(u16, u16)>, out: &mut Vec<SwMonomial>) {
        if rem == 0 {
            let mut v = cur.clone();
            v.reverse();
            out.push(SwMonomial(v));
            return;
        }
        if idx < lo || idx == 0 {
            return;
        }
        let i = idx as u32;
        for e in (0..=rem / i).rev() {
            if e > 0 {
                cur.push((idx, e as u16));
            }
            rec(rem - e * i, idx - 1, lo, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if hi >= lo {
        rec(t, hi, lo.max(1), &mut Vec::new(), &mut out);
    } else if t == 0 {
        out.push(SwMonomial::one());
    }
    out.sort_by(|a, b| a.basis_cmp(b));
    out
}

/// Number of partitions of `t` into parts from `lo..=hi` (generating function count).
pub fn partition_count(t: u32, lo: u32, hi: u32) -> usize {
    let mut ways = vec![0usize; t as usize + 1];
    ways[0] = 1;
    for part in lo.max(1)..=hi {
        for s in part as usize..=t as usize {
            ways[s] += ways[s - part as usize];
        }
    }
    ways[t as usize]
}

struct SpinQuotient {
    generators: Vec<RingElement>,
    /// `ideal[t]`: degree-`t` part of `J_d` over the polynomial basis.
    ideal: Vec<Subspace>,
    /// Positions (in the polynomial basis) of the standard monomials.
    standard: Vec<Vec<usize>>,
}

/// Characteristic class ring of one family, truncated at `t_max`.
pub struct CharRing {
    family: Family,
    d: u16,
    t_max: u32,
    /// Polynomial monomials per degree (before any spin quotient).
    monomials: Vec<Vec<SwMonomial>>,
    index: Vec<HashMap<SwMonomial, usize>>,
    spin: Option<SpinQuotient>,
    sq_cache: Mutex<HashMap<(u32, SwMonomial), RingElement>>,
}

impl fmt::Debug for CharRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharRing")
            .field("family", &self.family)
            .field("d", &self.d)
            .field("t_max", &self.t_max)
            .finish()
    }
}

pub fn build_ring(family: Family, d: u32, t_max: u32) -> Result<CharRing, RingError> {
    CharRing::new(family, d, t_max)
}

impl CharRing {
    pub fn new(family: Family, d: u32, t_max: u32) -> Result<CharRing, RingError> {
        if family == Family::Spin && d >= 1 && (t_max as u64) >= a_r(d) {
            return Err(RingError::SpinRange { t_max, a_d: a_r(d) });
        }
        let d16 = d as u16;
        let monomials: Vec<Vec<SwMonomial>> =
            (0..=t_max).map(|t| monomials_of_degree(t, family.lowest_class(), d16)).collect();
        let index = monomials
            .iter()
            .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let mut ring = CharRing {
            family,
            d: d16,
            t_max,
            monomials,
            index,
            spin: None,
            sq_cache: Mutex::new(HashMap::new()),
        };
        if family == Family::Spin {
            ring.spin = Some(ring.build_spin_quotient());
        }
        Ok(ring)
    }

    fn build_spin_quotient(&self) -> SpinQuotient {
        // w_2, Sq^1 w_2, Sq^2 Sq^1 w_2, ... while the degree stays in range.
        let mut generators = Vec::new();
        if self.d >= 2 && self.t_max >= 2 {
            let mut g = RingElement::monomial(SwMonomial::w(2));
            let mut step = 1u32;
            loop {
                generators.push(g.clone());
                if g.degree + step > self.t_max {
                    break;
                }
                g = self.sq_poly(step, &g);
                step *= 2;
            }
        }
        let mut ideal = Vec::with_capacity(self.t_max as usize + 1);
        let mut standard = Vec::with_capacity(self.t_max as usize + 1);
        for t in 0..=self.t_max {
            let n = self.monomials[t as usize].len();
            let mut sub = Subspace::new(n);
            for g in &generators {
                if g.degree > t {
                    continue;
                }
                for m in &self.monomials[(t - g.degree) as usize] {
                    let prod = g.mul(&RingElement::monomial(m.clone()));
                    sub.add(&self.poly_vector(&prod));
                }
            }
            let mut is_pivot = vec![false; n];
            for v in sub.basis() {
                is_pivot[v.first_one().expect("nonzero basis vector")] = true;
            }
            standard.push((0..n).filter(|&i| !is_pivot[i]).collect());
            ideal.push(sub);
        }
        SpinQuotient { generators, ideal, standard }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn d(&self) -> u32 {
        self.d as u32
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    /// All polynomial monomials of degree `t` (the spin ring still uses the
    /// oriented monomials as representatives).
    pub fn monomials(&self, t: u32) -> &[SwMonomial] {
        &self.monomials[t as usize]
    }

    pub fn monomial_index(&self, m: &SwMonomial) -> Option<usize> {
        self.index.get(m.degree() as usize)?.get(m).copied()
    }

    /// Basis of the ring in degree `t`: all monomials, or the standard
    /// monomials modulo `J_d` for spin.
    pub fn basis(&self, t: u32) -> Vec<SwMonomial> {
        match &self.spin {
            None => self.monomials[t as usize].clone(),
            Some(q) => q.standard[t as usize].iter().map(|&i| self.monomials[t as usize][i].clone()).collect(),
        }
    }

    pub fn dim(&self, t: u32) -> usize {
        match &self.spin {
            None => self.monomials.get(t as usize).map_or(0, |m| m.len()),
            Some(q) => q.standard.get(t as usize).map_or(0, |s| s.len()),
        }
    }

    /// Generators of `J_d` that fall in range (spin only).
    pub fn spin_generators(&self) -> &[RingElement] {
        self.spin.as_ref().map_or(&[], |q| &q.generators)
    }

    /// `J_d` in degree `t` over the polynomial monomial basis (spin only).
    pub fn spin_ideal(&self, t: u32) -> Option<&Subspace> {
        self.spin.as_ref().map(|q| &q.ideal[t as usize])
    }

    pub fn check_degree(&self, t: u32) -> Result<(), RingError> {
        if t > self.t_max {
            Err(RingError::OutOfRange { degree: t, t_max: self.t_max })
        } else {
            Ok(())
        }
    }

    /// Coordinates over the polynomial monomials, no reduction.
    pub fn poly_vector(&self, x: &RingElement) -> F2Vector {
        let t = x.degree as usize;
        let mut v = F2Vector::zeros(self.monomials[t].len());
        for m in &x.terms {
            v.flip(self.index[t][m]);
        }
        v
    }

    pub fn poly_element(&self, t: u32, v: &F2Vector) -> RingElement {
        let mut x = RingElement::zero(t);
        for i in v.iter_ones() {
            x.terms.insert(self.monomials[t as usize][i].clone());
        }
        x
    }

    /// Normal form: unchanged for O and SO, reduced modulo `J_d` for spin.
    pub fn reduce(&self, x: &RingElement) -> RingElement {
        match &self.spin {
            None => x.clone(),
            Some(q) => {
                let v = q.ideal[x.degree as usize].reduce(&self.poly_vector(x));
                self.poly_element(x.degree, &v)
            }
        }
    }

    /// Coordinates over [`CharRing::basis`].
    pub fn to_vector(&self, x: &RingElement) -> Result<F2Vector, RingError> {
        self.check_degree(x.degree)?;
        match &self.spin {
            None => Ok(self.poly_vector(x)),
            Some(q) => {
                let t = x.degree as usize;
                let v = q.ideal[t].reduce(&self.poly_vector(x));
                let std = &q.standard[t];
                let mut out = F2Vector::zeros(std.len());
                for (k, &i) in std.iter().enumerate() {
                    if v.get(i) {
                        out.set(k, true);
                    }
                }
                Ok(out)
            }
        }
    }

    pub fn from_vector(&self, t: u32, v: &F2Vector) -> RingElement {
        let basis = self.basis(t);
        let mut x = RingElement::zero(t);
        for i in v.iter_ones() {
            x.terms.insert(basis[i].clone());
        }
        x
    }

    /// `Sq^k(w_i)` by the Wu formula, as a polynomial (not reduced for spin).
    pub fn wu_square(&self, k: u32, i: u32) -> Result<RingElement, RingError> {
        if i == 0 || i > self.d as u32 {
            return Err(RingError::BadIndex { index: i, d: self.d as u32 });
        }
        Ok(wu_square(k, i, self.family, self.d as u32))
    }

    /// `Sq^k(m)` on a polynomial monomial via the Cartan formula.
    fn sq_mono(&self, k: u32, m: &SwMonomial, cache: &mut HashMap<(u32, SwMonomial), RingElement>) -> RingElement {
        let deg = m.degree();
        if k == 0 {
            return RingElement::monomial(m.clone());
        }
        if k > deg {
            return RingElement::zero(deg + k);
        }
        if let Some(x) = cache.get(&(k, m.clone())) {
            return x.clone();
        }
        let i = m.factors()[0].0;
        let rest = m.without(i).expect("factor present");
        let mut out = RingElement::zero(deg + k);
        for j in 0..=k.min(i as u32) {
            if k - j > rest.degree() {
                continue;
            }
            let a = wu_square(j, i as u32, self.family, self.d as u32);
            if a.is_zero() {
                continue;
            }
            let b = self.sq_mono(k - j, &rest, cache);
            out.add_assign(&a.mul(&b));
        }
        cache.insert((k, m.clone()), out.clone());
        out
    }

    /// `Sq^k(x)` as a polynomial, without spin reduction.
    pub fn sq_poly(&self, k: u32, x: &RingElement) -> RingElement {
        let mut cache = self.sq_cache.lock().unwrap_or_else(|e| e.into_inner());
        let mut out = RingElement::zero(x.degree + k);
        for m in &x.terms {
            out.add_assign(&self.sq_mono(k, m, &mut cache));
        }
        out
    }

    /// `Sq^k(x)` in normal form.
    pub fn sq(&self, k: u32, x: &RingElement) -> Result<RingElement, RingError> {
        self.check_degree(x.degree + k)?;
        Ok(self.reduce(&self.sq_poly(k, x)))
    }

    /// `[Sq^0 x, Sq^1 x, ..., Sq^{deg x} x]`.
    pub fn total_square(&self, x: &RingElement) -> Result<Vec<RingElement>, RingError> {
        self.check_degree(x.degree)?;
        Ok((0..=x.degree).map(|k| self.reduce(&self.sq_poly(k, x))).collect())
    }

    /// Dual classes `w̄_0 = 1, w̄_1, ..., w̄_{n_max}` with
    /// `sum_j w_j w̄_{i-j} = 0` for `i >= 1`, as polynomials.
    pub fn dual_classes(&self, n_max: u32) -> Vec<RingElement> {
        dual_classes(self.family, self.d as u32, n_max)
    }

    /// Matrix of `Sq^k: H^t -> H^{t+k}` with row `i` the image of basis element `i`.
    pub fn action_matrix(&self, k: u32, t: u32) -> Result<F2Matrix, RingError> {
        self.check_degree(t + k)?;
        let src = self.basis(t);
        let rows: Result<Vec<F2Vector>, RingError> = src
            .iter()
            .map(|m| self.to_vector(&self.sq_poly(k, &RingElement::monomial(m.clone()))))
            .collect();
        Ok(F2Matrix::from_rows(self.dim(t + k), &rows?))
    }

    /// Checks that `J_d` is carried into itself by every `Sq^k` in range.
    pub fn check_spin_closure(&self) -> Result<(), RingError> {
        let Some(q) = &self.spin else { return Ok(()) };
        for t in 0..=self.t_max {
            for v in q.ideal[t as usize].basis() {
                let x = self.poly_element(t, v);
                for k in 1..=(self.t_max - t) {
                    let y = self.sq_poly(k, &x);
                    if !q.ideal[(t + k) as usize].contains(&self.poly_vector(&y)) {
                        return Err(RingError::NotClosed { k, degree: t });
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Sq^k(w_i) = sum_j binom(i-k+j-1, j) w_{i+j} w_{k-j}` with `w_0 = 1`,
/// `w_m = 0` for `m > d` and, in the oriented families, `w_1 = 0`.
pub fn wu_square(k: u32, i: u32, family: Family, d: u32) -> RingElement {
    let deg = i + k;
    let mut out = RingElement::zero(deg);
    if k > i {
        return out;
    }
    let lowest = family.lowest_class() as u32;
    let present = |m: u32| m == 0 || (m >= lowest && m <= d);
    if !present(i) {
        return out;
    }
    for j in 0..=k {
        let (a, b) = (i + j, k - j);
        if !present(a) || !present(b) {
            continue;
        }
        if !binom2_signed(i as i64 - k as i64 + j as i64 - 1, j as i64) {
            continue;
        }
        let mut m = SwMonomial::w(a as u16);
        if b > 0 {
            m = m.mul(&SwMonomial::w(b as u16));
        }
        out.toggle(m);
    }
    out
}

/// Dual Stiefel-Whitney classes up to degree `n_max`.
pub fn dual_classes(family: Family, d: u32, n_max: u32) -> Vec<RingElement> {
    let lowest = family.lowest_class() as u32;
    let mut out: Vec<RingElement> = vec![RingElement::one()];
    for n in 1..=n_max {
        let mut x = RingElement::zero(n);
        for j in lowest..=n.min(d) {
            let wj = RingElement::monomial(SwMonomial::w(j as u16));
            x.add_assign(&wj.mul(&out[(n - j) as usize]));
        }
        out.push(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ms: &[&[(u16, u16)]]) -> RingElement {
        let mut x = RingElement::zero(SwMonomial::from_pairs(ms[0]).degree());
        for m in ms {
            x.toggle(SwMonomial::from_pairs(m));
        }
        x
    }

    #[test]
    fn wu_examples() {
        assert_eq!(wu_square(2, 2, Family::O, 10), el(&[&[(2, 2)]]));
        assert_eq!(wu_square(0, 5, Family::SO, 10), el(&[&[(5, 1)]]));
        for i in 2..10u32 {
            let s = wu_square(1, i, Family::SO, 10);
            if (i - 1) % 2 == 1 {
                assert_eq!(s, el(&[&[(i as u16 + 1, 1)]]));
            } else {
                assert!(s.is_zero());
            }
        }
        assert!(wu_square(3, 2, Family::O, 10).is_zero());
    }

    #[test]
    fn cartan_example() {
        let ring = build_ring(Family::SO, 10, 12).unwrap();
        let x = el(&[&[(2, 1), (3, 1)]]);
        assert_eq!(ring.sq(1, &x).unwrap(), el(&[&[(3, 2)]]));
    }

    #[test]
    fn dual_class_examples() {
        let o = dual_classes(Family::O, 6, 3);
        assert_eq!(o[1], el(&[&[(1, 1)]]));
        assert_eq!(o[2], el(&[&[(1, 2)], &[(2, 1)]]));
        let so = dual_classes(Family::SO, 6, 3);
        assert_eq!(so[2], el(&[&[(2, 1)]]));
        assert_eq!(so[3], el(&[&[(3, 1)]]));
    }

    #[test]
    fn oriented_dimensions() {
        let ring = build_ring(Family::SO, 10, 12).unwrap();
        assert_eq!(ring.dim(4), 2);
        for t in 0..=12 {
            assert_eq!(ring.dim(t), partition_count(t, 2, 10));
        }
        let o1 = build_ring(Family::O, 1, 9).unwrap();
        assert!((0..=9).all(|t| o1.dim(t) == 1));
    }

    #[test]
    fn a_r_values() {
        let got: Vec<u64> = (1..=17).map(a_r).collect();
        assert_eq!(got, [1, 2, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128, 128, 128, 128, 256]);
    }

    #[test]
    fn basis_order_puts_small_indices_first() {
        let ms: Vec<String> = monomials_of_degree(6, 2, 6).iter().map(|m| m.to_string()).collect();
        assert_eq!(ms, ["w2^3", "w2w4", "w3^2", "w6"]);
    }
}
