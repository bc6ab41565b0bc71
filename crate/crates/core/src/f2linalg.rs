//! Dense linear algebra over GF(2).
//!
//! Matrices are row-major with 64 columns per word; column `j` lives in bit
//! `j % 64` of word `j / 64`. Row reduction picks pivots from the lowest
//! column index upward, so the reduced form and every derived basis is
//! deterministic.

use std::fmt;

use crate::par::{self, Exec};

/// Below this many words the elimination loop is not worth splitting.
const PAR_WORDS: usize = 1 << 14;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector { len, words: vec![0; words_for(len)] }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.flip(i);
        }
        v
    }

    /// Parse a string of `0`/`1` characters, lowest index first.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(Self::from_bits(&bits))
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        F2Vector { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, b: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let m = 1u64 << (i % 64);
        if b {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set index.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones();
        }
        acc & 1 == 1
    }

    /// Concatenate `self` and `other`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut v = F2Vector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Entries `range.start..range.end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> F2Vector {
        assert!(start <= end && end <= self.len);
        let mut v = F2Vector::zeros(end - start);
        for i in self.iter_ones() {
            if i >= start && i < end {
                v.set(i - start, true);
            }
        }
        v
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({self})")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: F2Matrix,
    /// `pivots[i]` is the pivot column of row `i`, for `i < rank`.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        F2Matrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from row vectors, all of length `cols`.
    pub fn from_rows(cols: usize, rows: &[F2Vector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has length {}, expected {cols}", r.len());
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
    }

    /// Parse rows written as `0`/`1` strings.
    pub fn parse_rows(cols: usize, rows: &[&str]) -> Option<Self> {
        let vs: Option<Vec<F2Vector>> = rows.iter().map(|r| F2Vector::parse(r)).collect();
        let vs = vs?;
        if vs.iter().any(|v| v.len() != cols) {
            return None;
        }
        Some(Self::from_rows(cols, &vs))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of range");
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, b: bool) {
        assert!(i < self.rows && j < self.cols, "({i},{j}) out of range");
        let w = &mut self.data[i * self.stride + j / 64];
        let m = 1u64 << (j % 64);
        if b {
            *w |= m;
        } else {
            *w &= !m;
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_vectors(&self) -> Vec<F2Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col(&self, j: usize) -> F2Vector {
        let mut v = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// `self * other`.
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = F2Matrix::zeros(self.rows, other.cols);
        let stride = out.stride;
        for i in 0..self.rows {
            let row = self.row(i);
            let dst = &mut out.data[i * stride..(i + 1) * stride];
            for k in row.iter_ones() {
                for (d, s) in dst.iter_mut().zip(other.row_words(k)) {
                    *d ^= s;
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v` of length `cols`.
    pub fn mul_vec(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = F2Vector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = 0u32;
            for (a, b) in self.row_words(i).iter().zip(v.words()) {
                acc ^= (a & b).count_ones();
            }
            if acc & 1 == 1 {
                out.set(i, true);
            }
        }
        out
    }

    /// `v * self` for a row vector `v` of length `rows`: the sum of the rows
    /// selected by `v`.
    pub fn vec_mul(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.rows, "vector length mismatch");
        let mut w = vec![0u64; self.stride];
        for i in v.iter_ones() {
            for (d, s) in w.iter_mut().zip(self.row_words(i)) {
                *d ^= s;
            }
        }
        F2Vector::from_words(self.cols, w)
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        out
    }

    pub fn rref(&self) -> Rref {
        self.rref_with(Exec::current())
    }

    pub fn rref_with(&self, exec: Exec) -> Rref {
        let mut m = self.clone();
        let stride = m.stride;
        let exec = if m.data.len() >= PAR_WORDS { exec } else { Exec::Sequential };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (wi, mask) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..m.rows).find(|&i| m.data[i * stride + wi] & mask != 0) else {
                continue;
            };
            if p != r {
                for k in 0..stride {
                    m.data.swap(p * stride + k, r * stride + k);
                }
            }
            let pivot_row: Vec<u64> = m.row_words(r)[wi..].to_vec();
            par::for_each_chunk(exec, &mut m.data, stride, |i, row| {
                if i != r && row[wi] & mask != 0 {
                    for (d, s) in row[wi..].iter_mut().zip(&pivot_row) {
                        *d ^= s;
                    }
                }
            });
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column in
    /// increasing column order. The vector for free column `f` has a 1 at
    /// `f`, zeros at the other free columns, and is determined on pivots.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&f| !is_pivot[f]) {
            let mut v = F2Vector::unit(self.cols, f);
            for (i, &p) in rref.pivots.iter().enumerate() {
                if rref.matrix.get(i, f) {
                    v.set(p, true);
                }
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{v : v * self = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<F2Vector> {
        self.transpose().kernel_basis()
    }

    /// A solution of `self * x = b` with every free variable set to zero,
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, b: &F2Vector) -> Option<F2Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let mut aug = F2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                aug.set(i, j, true);
            }
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let rref = aug.rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = F2Vector::zeros(self.cols);
        for (i, &p) in rref.pivots.iter().enumerate() {
            if rref.matrix.get(i, self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Reduced basis of the row space.
    pub fn row_space_basis(&self) -> Vec<F2Vector> {
        let rref = self.rref();
        (0..rref.rank()).map(|i| rref.matrix.row(i)).collect()
    }

    /// Keep only the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                if self.get(i, c) {
                    out.set(i, k, true);
                }
            }
        }
        out
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        Ok(())
    }
}

/// Incrementally maintained subspace in reduced echelon form.
///
/// Every stored vector has a distinct pivot (its lowest set index) and no
/// other stored vector has a 1 at that pivot.
#[derive(Clone, Debug)]
pub struct Subspace {
    len: usize,
    rows: Vec<F2Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(len: usize) -> Self {
        Subspace { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.rows
    }

    /// Reduce `v` against the stored basis.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        let mut w = v.clone();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if w.get(p) {
                w.add_assign(r);
            }
        }
        w
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert `v`; returns `false` if it was already in the span.
    pub fn add(&mut self, v: &F2Vector) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch");
        let w = self.reduce(v);
        let Some(p) = w.first_one() else {
            return false;
        };
        for r in self.rows.iter_mut() {
            if r.get(p) {
                r.add_assign(&w);
            }
        }
        self.pivots.push(p);
        self.rows.push(w);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_small_matrix() {
        let m = F2Matrix::parse_rows(4, &["1101", "0110", "1011"]).unwrap();
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.row(0).to_string(), "1011");
        assert_eq!(r.matrix.row(1).to_string(), "0110");
        assert!(r.matrix.row(2).is_zero());
    }

    #[test]
    fn kernel_in_free_variable_order() {
        let m = F2Matrix::parse_rows(4, &["1101", "0110"]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0].to_string(), "1110");
        assert_eq!(k[1].to_string(), "1001");
        for v in &k {
            assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = F2Matrix::parse_rows(3, &["110", "011"]).unwrap();
        let b = F2Vector::parse("10").unwrap();
        let x = m.solve(&b).unwrap();
        assert_eq!(x.to_string(), "100");
        let inconsistent = F2Matrix::parse_rows(2, &["11", "11"]).unwrap();
        assert!(inconsistent.solve(&F2Vector::parse("10").unwrap()).is_none());
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut m = F2Matrix::zeros(3, 130);
        m.set(0, 129, true);
        m.set(1, 64, true);
        m.set(1, 129, true);
        m.set(2, 0, true);
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 64, 129]);
        assert_eq!(m.transpose().transpose(), m);
    }

    #[test]
    fn subspace_tracks_span() {
        let mut s = Subspace::new(3);
        assert!(s.add(&F2Vector::parse("110").unwrap()));
        assert!(s.add(&F2Vector::parse("011").unwrap()));
        assert!(!s.add(&F2Vector::parse("101").unwrap()));
        assert!(s.contains(&F2Vector::parse("101").unwrap()));
        assert!(!s.contains(&F2Vector::parse("001").unwrap()));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn empty_shapes() {
        let m = F2Matrix::zeros(0, 5);
        assert_eq!(m.kernel_basis().len(), 5);
        let m = F2Matrix::zeros(4, 0);
        assert!(m.kernel_basis().is_empty());
        assert_eq!(m.solve(&F2Vector::zeros(4)), Some(F2Vector::zeros(0)));
    }
}
