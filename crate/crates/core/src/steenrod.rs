//! The mod 2 Steenrod algebra on the admissible basis.
//!
//! [`adem_reduce`] rewrites an arbitrary word of squares by repeated Adem
//! relations. [`SteenrodAlgebra`] precomputes products `Sq^a * Sq^J` for
//! admissible `J` up to a fixed degree and answers every product through
//! that table; the two routes are checked against each other in tests.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::f2linalg::F2Vector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SteenrodError {
    #[error("degree {degree} exceeds the algebra truncation {max}")]
    OutOfRange { degree: u32, max: u32 },
    #[error("{0:?} is not an admissible sequence")]
    NotAdmissible(Vec<u32>),
}

/// `binom(n, k) mod 2` for `n >= 0` (Lucas).
pub fn binom2(n: u64, k: u64) -> bool {
    k <= n && (n & k) == k
}

/// `binom(n, k) mod 2` for any integer `n`, using
/// `binom(n, k) = (-1)^k binom(k - n - 1, k)` when `n < 0`.
pub fn binom2_signed(n: i64, k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if n >= 0 {
        binom2(n as u64, k as u64)
    } else {
        binom2((k - n - 1) as u64, k as u64)
    }
}

/// `Sq^{i_1} ... Sq^{i_k}`; the empty sequence is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleMonomial(Vec<u32>);

impl AdmissibleMonomial {
    pub fn new(seq: Vec<u32>) -> Result<Self, SteenrodError> {
        let m = AdmissibleMonomial(seq);
        if m.0.contains(&0) || !m.is_admissible() {
            return Err(SteenrodError::NotAdmissible(m.0));
        }
        Ok(m)
    }

    pub fn unit() -> Self {
        AdmissibleMonomial(Vec::new())
    }

    pub fn sq(i: u32) -> Self {
        if i == 0 {
            Self::unit()
        } else {
            AdmissibleMonomial(vec![i])
        }
    }

    pub fn seq(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i_1 - i_2 - ... - i_k`.
    pub fn excess(&self) -> u32 {
        let tail: u32 = self.0.iter().skip(1).sum();
        self.0.first().map_or(0, |&i| i - tail)
    }

    fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.len() {
            0 => f.write_str("1"),
            1 => write!(f, "Sq^{}", self.0[0]),
            _ => {
                let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
                write!(f, "Sq^{{{}}}", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A homogeneous element, stored as its set of admissible monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SteenrodElement {
    pub degree: u32,
    pub terms: BTreeSet<AdmissibleMonomial>,
}

impl SteenrodElement {
    pub fn zero(degree: u32) -> Self {
        SteenrodElement { degree, terms: BTreeSet::new() }
    }

    pub fn from_monomial(m: AdmissibleMonomial) -> Self {
        let degree = m.degree();
        SteenrodElement { degree, terms: BTreeSet::from([m]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_monomial(&mut self, m: AdmissibleMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &SteenrodElement) {
        assert_eq!(self.degree, other.degree, "adding elements of different degree");
        for m in &other.terms {
            self.add_monomial(m.clone());
        }
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Admissible sequences of total degree `n`, in decreasing lexicographic
/// order (so `Sq^n` comes first).
pub fn admissible_basis(n: u32) -> Vec<AdmissibleMonomial> {
    fn rec(rem: u32, max_first: u32, prefix: &mut Vec<u32>, out: &mut Vec<AdmissibleMonomial>) {
        if rem == 0 {
            out.push(AdmissibleMonomial(prefix.clone()));
            return;
        }
        // The remaining tail i_2, i_3, ... sums to less than i_1, so i_1 > rem / 2.
        let hi = rem.min(max_first);
        for i in (1..=hi).rev() {
            let rest = rem - i;
            if rest >= i {
                continue;
            }
            prefix.push(i);
            rec(rest, i / 2, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Rewrite `Sq^{w_1} ... Sq^{w_k}` into admissible form by Adem relations
/// `Sq^a Sq^b = sum_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c` for `a < 2b`.
pub fn adem_reduce(word: &[u32]) -> SteenrodElement {
    let degree = word.iter().sum();
    let mut out = SteenrodElement::zero(degree);
    let mut memo = HashMap::new();
    for m in reduce_word(word, &mut memo) {
        out.add_monomial(m);
    }
    out
}

fn reduce_word(word: &[u32], memo: &mut HashMap<Vec<u32>, Vec<AdmissibleMonomial>>) -> Vec<AdmissibleMonomial> {
    let w: Vec<u32> = word.iter().copied().filter(|&i| i != 0).collect();
    if let Some(r) = memo.get(&w) {
        return r.clone();
    }
    let bad = w.windows(2).position(|p| p[0] < 2 * p[1]);
    let result = match bad {
        None => vec![AdmissibleMonomial(w.clone())],
        Some(j) => {
            let (a, b) = (w[j] as i64, w[j + 1] as i64);
            let mut acc: BTreeSet<AdmissibleMonomial> = BTreeSet::new();
            for c in 0..=a / 2 {
                if !binom2_signed(b - c - 1, a - 2 * c) {
                    continue;
                }
                let mut nw = w[..j].to_vec();
                nw.push((a + b - c) as u32);
                nw.push(c as u32);
                nw.extend_from_slice(&w[j + 2..]);
                for m in reduce_word(&nw, memo) {
                    if !acc.remove(&m) {
                        acc.insert(m);
                    }
                }
            }
            acc.into_iter().collect()
        }
    };
    memo.insert(w, result.clone());
    result
}

/// Number of Milnor basis elements in degree `n`, i.e. sequences
/// `(r_1, r_2, ...)` with `sum r_i (2^i - 1) = n`. Equals the number of
/// admissible monomials of degree `n`.
pub fn milnor_dimension(n: u32) -> usize {
    let weights: Vec<u32> = (1..32).map(|i| (1u32 << i) - 1).take_while(|&w| w <= n.max(1)).collect();
    let mut ways = vec![0usize; n as usize + 1];
    ways[0] = 1;
    for &w in &weights {
        for t in w as usize..=n as usize {
            ways[t] += ways[t - w as usize];
        }
    }
    ways[n as usize]
}

/// The algebra truncated at `max_degree`, with a precomputed product table.
#[derive(Debug)]
pub struct SteenrodAlgebra {
    max_degree: u32,
    basis: Vec<Vec<AdmissibleMonomial>>,
    index: Vec<HashMap<AdmissibleMonomial, usize>>,
    /// `sq_table[n][j][a]` is `Sq^a * basis[n][j]` in degree `n + a`, for `a >= 1`.
    sq_table: Vec<Vec<Vec<F2Vector>>>,
}

impl SteenrodAlgebra {
    pub fn new(max_degree: u32) -> Self {
        let basis: Vec<Vec<AdmissibleMonomial>> = (0..=max_degree).map(admissible_basis).collect();
        let index = basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let mut alg = SteenrodAlgebra { max_degree, basis, index, sq_table: Vec::new() };
        alg.build_table();
        alg
    }

    fn build_table(&mut self) {
        let n_max = self.max_degree;
        let mut memo: HashMap<(u32, AdmissibleMonomial), F2Vector> = HashMap::new();
        let mut table = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            let mut per_n = Vec::with_capacity(self.basis[n as usize].len());
            for j in 0..self.basis[n as usize].len() {
                let mono = self.basis[n as usize][j].clone();
                let mut per_a = vec![F2Vector::zeros(0)];
                for a in 1..=(n_max - n) {
                    per_a.push(self.sq_times(a, &mono, &mut memo));
                }
                per_n.push(per_a);
            }
            table.push(per_n);
        }
        self.sq_table = table;
    }

    /// `Sq^a * m` for admissible `m`, by induction on the first entry of `m`.
    fn sq_times(
        &self,
        a: u32,
        m: &AdmissibleMonomial,
        memo: &mut HashMap<(u32, AdmissibleMonomial), F2Vector>,
    ) -> F2Vector {
        let deg = a + m.degree();
        if let Some(v) = memo.get(&(a, m.clone())) {
            return v.clone();
        }
        let mut out = F2Vector::zeros(self.basis[deg as usize].len());
        if a == 0 {
            out.set(self.index[deg as usize][m], true);
        } else if m.0.is_empty() || a >= 2 * m.0[0] {
            let mut s = vec![a];
            s.extend_from_slice(&m.0);
            out.set(self.index[deg as usize][&AdmissibleMonomial(s)], true);
        } else {
            let b = m.0[0];
            let tail = AdmissibleMonomial(m.0[1..].to_vec());
            for c in 0..=a / 2 {
                if !binom2_signed(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
                    continue;
                }
                // Sq^c * tail, then Sq^{a+b-c} on each resulting term.
                let inner = self.sq_times(c, &tail, memo);
                let inner_deg = c + tail.degree();
                for k in inner.iter_ones() {
                    let t = self.basis[inner_deg as usize][k].clone();
                    out.add_assign(&self.sq_times(a + b - c, &t, memo));
                }
            }
        }
        memo.insert((a, m.clone()), out.clone());
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn dim(&self, n: u32) -> usize {
        self.basis.get(n as usize).map_or(0, |b| b.len())
    }

    pub fn basis(&self, n: u32) -> &[AdmissibleMonomial] {
        &self.basis[n as usize]
    }

    pub fn index_of(&self, m: &AdmissibleMonomial) -> Option<usize> {
        self.index.get(m.degree() as usize)?.get(m).copied()
    }

    /// `Sq^a * basis(n)[j]` as a vector over `basis(n + a)`.
    pub fn sq_on_basis(&self, a: u32, n: u32, j: usize) -> Result<F2Vector, SteenrodError> {
        self.check(a + n)?;
        if a == 0 {
            return Ok(F2Vector::unit(self.dim(n), j));
        }
        Ok(self.sq_table[n as usize][j][a as usize].clone())
    }

    /// Product of basis elements `basis(p)[i] * basis(q)[j]` over `basis(p + q)`.
    pub fn mul_basis(&self, p: u32, i: usize, q: u32, j: usize) -> Result<F2Vector, SteenrodError> {
        self.check(p + q)?;
        let left = &self.basis[p as usize][i];
        let mut cur = F2Vector::unit(self.dim(q), j);
        let mut deg = q;
        for &s in left.0.iter().rev() {
            let mut next = F2Vector::zeros(self.dim(deg + s));
            for k in cur.iter_ones() {
                next.add_assign(&self.sq_table[deg as usize][k][s as usize]);
            }
            cur = next;
            deg += s;
        }
        Ok(cur)
    }

    pub fn multiply(&self, x: &SteenrodElement, y: &SteenrodElement) -> Result<SteenrodElement, SteenrodError> {
        let deg = x.degree + y.degree;
        self.check(deg)?;
        let mut v = F2Vector::zeros(self.dim(deg));
        for a in &x.terms {
            let i = self.index_of(a).expect("admissible term");
            for b in &y.terms {
                let j = self.index_of(b).expect("admissible term");
                v.add_assign(&self.mul_basis(x.degree, i, y.degree, j)?);
            }
        }
        Ok(self.element(deg, &v))
    }

    pub fn element(&self, n: u32, v: &F2Vector) -> SteenrodElement {
        let mut e = SteenrodElement::zero(n);
        for k in v.iter_ones() {
            e.terms.insert(self.basis[n as usize][k].clone());
        }
        e
    }

    pub fn vector(&self, e: &SteenrodElement) -> Result<F2Vector, SteenrodError> {
        self.check(e.degree)?;
        let mut v = F2Vector::zeros(self.dim(e.degree));
        for m in &e.terms {
            let k = self.index_of(m).ok_or_else(|| SteenrodError::NotAdmissible(m.0.clone()))?;
            v.flip(k);
        }
        Ok(v)
    }

    fn check(&self, degree: u32) -> Result<(), SteenrodError> {
        if degree > self.max_degree {
            Err(SteenrodError::OutOfRange { degree, max: self.max_degree })
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(words: &[&[u32]]) -> SteenrodElement {
        let mut e = SteenrodElement::zero(words[0].iter().sum());
        for w in words {
            e.add_monomial(AdmissibleMonomial::new(w.to_vec()).unwrap());
        }
        e
    }

    #[test]
    fn basis_in_degree_seven() {
        let b: Vec<String> = admissible_basis(7).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["Sq^7", "Sq^{6,1}", "Sq^{5,2}", "Sq^{4,2,1}"]);
    }

    #[test]
    fn low_adem_relations() {
        assert!(adem_reduce(&[1, 1]).is_zero());
        assert_eq!(adem_reduce(&[1, 2]), el(&[&[3]]));
        assert_eq!(adem_reduce(&[2, 2]), el(&[&[3, 1]]));
        assert_eq!(adem_reduce(&[2, 3]), el(&[&[5], &[4, 1]]));
        assert_eq!(adem_reduce(&[3, 2]), SteenrodElement::zero(5));
        assert_eq!(adem_reduce(&[1, 4]), el(&[&[5]]));
    }

    #[test]
    fn signed_binomials() {
        assert!(binom2_signed(-1, 1));
        assert!(binom2_signed(-1, 5));
        assert!(!binom2_signed(-2, 1));
        assert!(binom2_signed(-2, 2));
        assert!(binom2_signed(4, 0));
        assert!(!binom2_signed(3, 4));
    }

    #[test]
    fn table_products_match_word_reduction() {
        let alg = SteenrodAlgebra::new(14);
        for p in 0..=7 {
            for q in 0..=(14 - p) {
                for (i, a) in alg.basis(p).iter().enumerate() {
                    for (j, b) in alg.basis(q).iter().enumerate() {
                        let mut w = a.seq().to_vec();
                        w.extend_from_slice(b.seq());
                        let expect = alg.vector(&adem_reduce(&w)).unwrap();
                        assert_eq!(alg.mul_basis(p, i, q, j).unwrap(), expect, "{a} * {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_is_reported() {
        let alg = SteenrodAlgebra::new(5);
        let x = el(&[&[4]]);
        let y = el(&[&[2]]);
        assert_eq!(alg.multiply(&x, &y), Err(SteenrodError::OutOfRange { degree: 6, max: 5 }));
    }
}
