//! Finite graded modules over the Steenrod algebra, stored as one action
//! matrix per square and degree.
//!
//! Matrices follow the row convention used across the crate: row `i` of the
//! matrix for `Sq^k` in degree `t` is the image of the `i`-th basis element
//! of degree `t`, expressed over the basis in degree `t + k`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::f2linalg::{F2Matrix, F2Vector};
use crate::steenrod::binom2_signed;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("Sq^{k} from degree {t} leaves the module window [{t_min}, {t_max}]")]
    OutOfRange { k: u32, t: i32, t_min: i32, t_max: i32 },
    #[error("Adem relation Sq^{a} Sq^{b} fails in degree {t}")]
    AdemViolation { a: u32, b: u32, t: i32 },
    #[error("map does not commute with Sq^{k} in source degree {t}")]
    NotCommuting { k: u32, t: i32 },
    #[error("subspace in degree {t} is not closed under Sq^{k}")]
    NotClosed { k: u32, t: i32 },
    #[error("module dump parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedModule {
    label: String,
    t_min: i32,
    t_max: i32,
    /// Whether the underlying module has classes above `t_max`.
    truncated: bool,
    names: Vec<Vec<String>>,
    /// `actions[k - 1][t - t_min]` for `t + k <= t_max`.
    actions: Vec<Vec<F2Matrix>>,
}

impl TruncatedModule {
    /// A module with the given basis names and all squares zero.
    pub fn new(label: impl Into<String>, t_min: i32, names: Vec<Vec<String>>, truncated: bool) -> Self {
        let t_max = t_min + names.len() as i32 - 1;
        let span = (t_max - t_min).max(0) as usize;
        let mut actions = Vec::with_capacity(span);
        for k in 1..=span {
            let per_t = (0..=(span - k))
                .map(|i| F2Matrix::zeros(names[i].len(), names[i + k].len()))
                .collect();
            actions.push(per_t);
        }
        TruncatedModule { label: label.into(), t_min, t_max, truncated, names, actions }
    }

    /// The zero module on `[t_min, t_max]`.
    pub fn zero(label: impl Into<String>, t_min: i32, t_max: i32) -> Self {
        let n = (t_max - t_min + 1).max(0) as usize;
        Self::new(label, t_min, vec![Vec::new(); n], false)
    }

    /// Trivial module `F_2` in degree 0 (cohomology of the sphere spectrum).
    pub fn sphere() -> Self {
        Self::new("S", 0, vec![vec!["1".to_string()]], false)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn t_min(&self) -> i32 {
        self.t_min
    }

    pub fn t_max(&self) -> i32 {
        self.t_max
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Highest internal degree in which Ext computed from this module is
    /// exact: everything when the module is finite, `t_max - 1` otherwise
    /// (for stems, not internal degrees).
    pub fn exact_stem_bound(&self) -> Option<i32> {
        if self.truncated {
            Some(self.t_max - 1)
        } else {
            None
        }
    }

    pub fn dim(&self, t: i32) -> usize {
        if t < self.t_min || t > self.t_max {
            0
        } else {
            self.names[(t - self.t_min) as usize].len()
        }
    }

    pub fn total_dim(&self) -> usize {
        self.names.iter().map(|n| n.len()).sum()
    }

    pub fn names(&self, t: i32) -> &[String] {
        if t < self.t_min || t > self.t_max {
            &[]
        } else {
            &self.names[(t - self.t_min) as usize]
        }
    }

    /// Lowest degree carrying a nonzero class.
    pub fn bottom(&self) -> Option<i32> {
        (self.t_min..=self.t_max).find(|&t| self.dim(t) > 0)
    }

    /// Matrix of `Sq^k` out of degree `t`.
    pub fn action(&self, k: u32, t: i32) -> Result<F2Matrix, ModuleError> {
        if k == 0 {
            return Ok(F2Matrix::identity(self.dim(t)));
        }
        let target = t + k as i32;
        if t < self.t_min || target > self.t_max {
            if t >= self.t_min && t <= self.t_max && self.dim(t) == 0 {
                return Ok(F2Matrix::zeros(0, 0));
            }
            if t < self.t_min && target <= self.t_max {
                return Ok(F2Matrix::zeros(0, self.dim(target)));
            }
            return Err(ModuleError::OutOfRange { k, t, t_min: self.t_min, t_max: self.t_max });
        }
        Ok(self.actions[k as usize - 1][(t - self.t_min) as usize].clone())
    }

    pub(crate) fn action_ref(&self, k: u32, t: i32) -> &F2Matrix {
        &self.actions[k as usize - 1][(t - self.t_min) as usize]
    }

    pub fn set_action(&mut self, k: u32, t: i32, m: F2Matrix) {
        assert!(k >= 1 && t >= self.t_min && t + k as i32 <= self.t_max, "Sq^{k} on degree {t} out of window");
        assert_eq!((m.rows(), m.cols()), (self.dim(t), self.dim(t + k as i32)), "action matrix shape");
        self.actions[k as usize - 1][(t - self.t_min) as usize] = m;
    }

    /// `Sq^k v` for `v` in degree `t`.
    pub fn act(&self, k: u32, t: i32, v: &F2Vector) -> Result<F2Vector, ModuleError> {
        if k == 0 {
            return Ok(v.clone());
        }
        let target = t + k as i32;
        if target > self.t_max {
            return Err(ModuleError::OutOfRange { k, t, t_min: self.t_min, t_max: self.t_max });
        }
        if t < self.t_min || t > self.t_max || self.dim(t) == 0 {
            return Ok(F2Vector::zeros(self.dim(target)));
        }
        Ok(self.action_ref(k, t).vec_mul(v))
    }

    /// `Sq^{i_1} ... Sq^{i_n} v`, applying the rightmost square first.
    pub fn act_sequence(&self, seq: &[u32], t: i32, v: &F2Vector) -> Result<F2Vector, ModuleError> {
        let mut cur = v.clone();
        let mut deg = t;
        for &k in seq.iter().rev() {
            cur = self.act(k, deg, &cur)?;
            deg += k as i32;
        }
        Ok(cur)
    }

    /// Check every Adem relation `Sq^a Sq^b`, `a < 2b`, that fits in the window.
    pub fn check_adem(&self) -> Result<(), ModuleError> {
        let span = self.t_max - self.t_min;
        for b in 1..=span as u32 {
            for a in 1..(2 * b) {
                if (a + b) as i32 > span {
                    break;
                }
                for t in self.t_min..=(self.t_max - (a + b) as i32) {
                    if self.dim(t) == 0 {
                        continue;
                    }
                    let lhs = self.action_ref(b, t).mul(self.action_ref(a, t + b as i32));
                    let mut rhs = F2Matrix::zeros(self.dim(t), self.dim(t + (a + b) as i32));
                    for c in 0..=a / 2 {
                        if !binom2_signed(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64) {
                            continue;
                        }
                        let term = if c == 0 {
                            self.action_ref(a + b, t).clone()
                        } else {
                            self.action_ref(c, t).mul(self.action_ref(a + b - c, t + c as i32))
                        };
                        rhs = rhs.add(&term);
                    }
                    if lhs != rhs {
                        return Err(ModuleError::AdemViolation { a, b, t });
                    }
                }
            }
        }
        Ok(())
    }

    /// The submodule spanned in each degree by `basis[t - t_min]`, with its
    /// inclusion. Fails if the span is not closed under the squares.
    pub fn submodule(
        &self,
        label: impl Into<String>,
        basis: Vec<Vec<F2Vector>>,
        names: Vec<Vec<String>>,
    ) -> Result<(TruncatedModule, ModuleMap), ModuleError> {
        let label = label.into();
        let mut sub = TruncatedModule::new(label.clone(), self.t_min, names, self.truncated);
        let span = (self.t_max - self.t_min) as u32;
        let coords: Vec<F2Matrix> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| F2Matrix::from_rows(self.dim(self.t_min + i as i32), b).transpose())
            .collect();
        for k in 1..=span {
            for t in self.t_min..=(self.t_max - k as i32) {
                let i = (t - self.t_min) as usize;
                let j = i + k as usize;
                if basis[i].is_empty() {
                    continue;
                }
                let mut rows = Vec::with_capacity(basis[i].len());
                for v in &basis[i] {
                    let img = self.act(k, t, v)?;
                    let x = coords[j].solve(&img).ok_or(ModuleError::NotClosed { k, t })?;
                    rows.push(x);
                }
                sub.set_action(k, t, F2Matrix::from_rows(basis[j].len(), &rows));
            }
        }
        let matrices = basis
            .iter()
            .enumerate()
            .map(|(i, b)| F2Matrix::from_rows(self.dim(self.t_min + i as i32), b))
            .collect();
        let map = ModuleMap::new(label, self.label.clone(), self.t_min, 0, matrices);
        Ok((sub, map))
    }

    /// Structured text dump.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "module {}", self.label);
        let _ = writeln!(s, "degrees {} {}", self.t_min, self.t_max);
        let _ = writeln!(s, "truncated {}", self.truncated);
        for t in self.t_min..=self.t_max {
            let names = self.names(t);
            if names.is_empty() {
                continue;
            }
            let _ = writeln!(s, "basis {} {}", t, names.join(" "));
        }
        let span = (self.t_max - self.t_min).max(0) as u32;
        for k in 1..=span {
            for t in self.t_min..=(self.t_max - k as i32) {
                let m = self.action_ref(k, t);
                if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
                    continue;
                }
                let rows: Vec<String> = (0..m.rows()).map(|i| m.row(i).to_string()).collect();
                let _ = writeln!(s, "sq {} {} {}", k, t, rows.join(" "));
            }
        }
        s.push_str("end\n");
        s
    }

    pub fn parse_dump(text: &str) -> Result<TruncatedModule, ModuleError> {
        let err = |line: usize, msg: &str| ModuleError::Parse { line, msg: msg.to_string() };
        let mut label = None;
        let mut range = None;
        let mut truncated = false;
        let mut names: Vec<(i32, Vec<String>)> = Vec::new();
        let mut squares: Vec<(usize, u32, i32, Vec<String>)> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let n = n + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            match it.next() {
                Some("module") => label = Some(it.collect::<Vec<_>>().join(" ")),
                Some("degrees") => {
                    let a = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad t_min"))?;
                    let b = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad t_max"))?;
                    range = Some((a, b));
                }
                Some("truncated") => truncated = it.next() == Some("true"),
                Some("basis") => {
                    let t = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad degree"))?;
                    names.push((t, it.map(str::to_string).collect()));
                }
                Some("sq") => {
                    let k = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad square"))?;
                    let t = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| err(n, "bad degree"))?;
                    squares.push((n, k, t, it.map(str::to_string).collect()));
                }
                Some("end") => break,
                Some(other) => return Err(err(n, &format!("unknown record `{other}`"))),
                None => {}
            }
        }
        let (t_min, t_max) = range.ok_or_else(|| err(0, "missing degrees record"))?;
        if t_max < t_min - 1 {
            return Err(err(0, "empty degree range"));
        }
        let mut per_t = vec![Vec::new(); (t_max - t_min + 1) as usize];
        for (t, ns) in names {
            if t < t_min || t > t_max {
                return Err(err(0, &format!("basis degree {t} outside range")));
            }
            per_t[(t - t_min) as usize] = ns;
        }
        let mut m = TruncatedModule::new(label.unwrap_or_default(), t_min, per_t, truncated);
        for (n, k, t, rows) in squares {
            if k == 0 || t < t_min || t + k as i32 > t_max {
                return Err(err(n, "square out of range"));
            }
            let cols = m.dim(t + k as i32);
            let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
            let mat = F2Matrix::parse_rows(cols, &refs).ok_or_else(|| err(n, "bad matrix rows"))?;
            if mat.rows() != m.dim(t) {
                return Err(err(n, "row count does not match basis"));
            }
            m.set_action(k, t, mat);
        }
        Ok(m)
    }

    /// Restrict to degrees `<= t_max` (a quotient module).
    pub fn truncate(&self, t_max: i32) -> TruncatedModule {
        if t_max >= self.t_max {
            return self.clone();
        }
        let n = (t_max - self.t_min + 1).max(0) as usize;
        let names = self.names[..n].to_vec();
        let mut m = TruncatedModule::new(self.label.clone(), self.t_min, names, false);
        let span = (t_max - self.t_min).max(0) as u32;
        for k in 1..=span {
            for t in self.t_min..=(t_max - k as i32) {
                m.set_action(k, t, self.action_ref(k, t).clone());
            }
        }
        m.truncated = (t_max + 1..=self.t_max).any(|t| self.dim(t) > 0) || self.truncated;
        m
    }
}

/// Degree-wise linear map between modules: source degree `t` goes to target
/// degree `t + shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: String,
    pub target: String,
    pub t_min: i32,
    pub shift: i32,
    /// `matrices[t - t_min]`, rows over the source basis.
    pub matrices: Vec<F2Matrix>,
}

impl ModuleMap {
    pub fn new(source: String, target: String, t_min: i32, shift: i32, matrices: Vec<F2Matrix>) -> Self {
        ModuleMap { source, target, t_min, shift, matrices }
    }

    pub fn t_max(&self) -> i32 {
        self.t_min + self.matrices.len() as i32 - 1
    }

    pub fn matrix(&self, t: i32) -> Option<&F2Matrix> {
        if t < self.t_min {
            return None;
        }
        self.matrices.get((t - self.t_min) as usize)
    }

    pub fn apply(&self, t: i32, v: &F2Vector) -> Option<F2Vector> {
        self.matrix(t).map(|m| m.vec_mul(v))
    }

    /// Check `f(Sq^k x) = Sq^k f(x)` wherever both sides are defined.
    pub fn check_commutes(&self, src: &TruncatedModule, tgt: &TruncatedModule) -> Result<(), ModuleError> {
        for t in self.t_min..=self.t_max() {
            let Some(f_t) = self.matrix(t) else { continue };
            if f_t.rows() == 0 {
                continue;
            }
            for k in 1.. {
                let s_top = t + k as i32;
                if s_top > self.t_max() || s_top > src.t_max() || s_top + self.shift > tgt.t_max() {
                    break;
                }
                let left = src.action(k, t)?.mul(self.matrix(s_top).expect("in range"));
                let right = f_t.mul(&tgt.action(k, t + self.shift)?);
                if left != right {
                    return Err(ModuleError::NotCommuting { k, t });
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        let mut mats = Vec::new();
        for t in self.t_min..=self.t_max() {
            let f = self.matrix(t).expect("in range");
            match other.matrix(t + self.shift) {
                Some(g) => mats.push(f.mul(g)),
                None => mats.push(F2Matrix::zeros(f.rows(), 0)),
            }
        }
        ModuleMap::new(self.source.clone(), other.target.clone(), self.t_min, self.shift + other.shift, mats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `H^*(RP^4)` shifted: classes x^1..x^4 with `Sq^k x^i = binom(i,k) x^{i+k}`.
    fn rp4() -> TruncatedModule {
        let names = (1..=4).map(|i| vec![format!("x{i}")]).collect();
        let mut m = TruncatedModule::new("RP4", 1, names, false);
        for i in 1..=4i32 {
            for k in 1..=(4 - i) as u32 {
                let mut a = F2Matrix::zeros(1, 1);
                a.set(0, 0, crate::steenrod::binom2(i as u64, k as u64));
                m.set_action(k, i, a);
            }
        }
        m
    }

    #[test]
    fn projective_space_satisfies_adem() {
        rp4().check_adem().unwrap();
    }

    #[test]
    fn broken_module_is_caught() {
        let mut m = rp4();
        m.set_action(3, 1, F2Matrix::identity(1));
        assert!(m.check_adem().is_err());
    }

    #[test]
    fn dump_round_trip() {
        let m = rp4();
        let back = TruncatedModule::parse_dump(&m.dump()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn out_of_range_square_is_an_error() {
        let m = rp4();
        assert!(matches!(m.act(2, 3, &F2Vector::unit(1, 0)), Err(ModuleError::OutOfRange { .. })));
    }
}
