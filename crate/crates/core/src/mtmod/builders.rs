//! Builders for the cohomology of `MT(d,r)`, its frame-space quotient
//! `ΣV_{d,r}` and the submodule `C_θ`.
//!
//! `H^*(MT(d,r))` is the ideal of the characteristic class ring generated by
//! `w_{d-r+1}, ..., w_d`, with squares twisted by the Thom class:
//! `Sq^k φ(x) = sum_j φ(Sq^j(x) w̄_{k-j})`. In the spin case the ideal is
//! taken modulo its intersection with `J_d`.

use std::collections::HashMap;

use thiserror::Error;

use crate::charrings::{a_r, CharRing, Family, RingElement, RingError, SwMonomial};
use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::mtmod::module::{ModuleError, ModuleMap, TruncatedModule};
use crate::steenrod::binom2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MtError {
    #[error("window violated: need {bound} (got {value}, limit {limit})")]
    Window { bound: &'static str, value: i64, limit: i64 },
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("twisted square Sq^{k} of {class} leaves the ideal")]
    NotClosed { k: u32, class: String },
}

fn window(ok: bool, bound: &'static str, value: i64, limit: i64) -> Result<(), MtError> {
    if ok {
        Ok(())
    } else {
        Err(MtError::Window { bound, value, limit })
    }
}

/// `H^*(MT(d,r))` together with the monomials behind its basis.
#[derive(Clone, Debug)]
pub struct MtModule {
    pub family: Family,
    pub d: u32,
    pub r: u32,
    pub module: TruncatedModule,
    /// Representative monomial of each basis element, per degree.
    pub monomials: Vec<Vec<SwMonomial>>,
    /// Spin only: reduction data modulo `J ∩ I`, per degree.
    spin: Option<Vec<SpinDegree>>,
}

#[derive(Clone, Debug)]
struct SpinDegree {
    ideal_index: HashMap<SwMonomial, usize>,
    reducer: Subspace,
    basis_index: Vec<Option<usize>>,
}

impl MtModule {
    pub fn label(family: Family, d: u32, r: u32) -> String {
        format!("MT{}({},{})", family, d, r)
    }

    pub fn bottom_degree(&self) -> i32 {
        (self.d - self.r + 1) as i32
    }

    pub fn monomials(&self, t: i32) -> &[SwMonomial] {
        let i = t - self.module.t_min();
        if i < 0 || i as usize >= self.monomials.len() {
            &[]
        } else {
            &self.monomials[i as usize]
        }
    }

    pub fn index_of(&self, m: &SwMonomial) -> Option<usize> {
        self.monomials(m.degree() as i32).iter().position(|x| x == m)
    }

    /// Coordinates of a class of the ideal (reduced modulo `J_d` for spin).
    pub fn vector_of(&self, x: &RingElement) -> Option<F2Vector> {
        let t = x.degree as i32;
        if let Some(spin) = &self.spin {
            let sd = spin.get((t - self.module.t_min()) as usize)?;
            let mut v = F2Vector::zeros(sd.basis_index.len());
            for m in &x.terms {
                v.flip(*sd.ideal_index.get(m)?);
            }
            let v = sd.reducer.reduce(&v);
            let mut out = F2Vector::zeros(self.module.dim(t));
            for i in v.iter_ones() {
                out.set(sd.basis_index[i]?, true);
            }
            return Some(out);
        }
        let mut v = F2Vector::zeros(self.module.dim(t));
        for m in &x.terms {
            v.flip(self.index_of(m)?);
        }
        Some(v)
    }

    /// The r classes `φ(w_k)`, `d-r+1 <= k <= d`, that lie in the window.
    pub fn thom_generators(&self) -> Vec<(i32, usize)> {
        let lo = self.d - self.r + 1;
        (lo..=self.d)
            .filter_map(|k| {
                let m = SwMonomial::w(k as u16);
                self.index_of(&m).map(|i| (k as i32, i))
            })
            .collect()
    }

    /// Map onto `H^*(ΣV_{d,r})` sending `φ(w_k)` to `y_k` and every other
    /// basis monomial to zero.
    pub fn quotient_map(&self) -> Result<(TruncatedModule, ModuleMap), MtError> {
        let v = v_module(self.family, self.d, self.r, self.module.t_max() as u32)?;
        let t_min = self.module.t_min();
        let mut mats = Vec::new();
        for t in t_min..=self.module.t_max() {
            let mut m = F2Matrix::zeros(self.module.dim(t), v.dim(t));
            for (i, mono) in self.monomials(t).iter().enumerate() {
                if mono.factors().len() == 1 && mono.factors()[0].1 == 1 && v.dim(t) == 1 {
                    m.set(i, 0, true);
                }
            }
            mats.push(m);
        }
        let map = ModuleMap::new(self.module.label().to_string(), v.label().to_string(), t_min, 0, mats);
        Ok((v, map))
    }
}

pub fn mt_module(family: Family, d: u32, r: u32, t_max: u32) -> Result<MtModule, MtError> {
    if r > d {
        return Err(MtError::Parameters(format!("r = {r} exceeds d = {d}")));
    }
    if r > 0 {
        let limit = 2 * (d - r) as i64 + 1;
        window(t_max as i64 <= limit, "t_max <= 2(d-r)+1 (ideal description of H*(MT(d,r)))", t_max as i64, limit)?;
    }
    if family == Family::Spin {
        check_spin(d, r, t_max)?;
    }
    build_mt(family, d, r, t_max)
}

pub(crate) fn check_spin(d: u32, r: u32, t_max: u32) -> Result<(), MtError> {
    window(d >= r + 9, "d-r >= 9 (spin relations below degree 10 avoided)", (d - r) as i64, 9)?;
    window(2 * r < d, "2r < d (spin free-module range)", 2 * r as i64, d as i64)?;
    let a = a_r(d - r);
    window((t_max as u64) < a, "t_max < a_{d-r} (spin free-module range)", t_max as i64, a as i64)?;
    Ok(())
}

/// The same construction without the structure-theorem window; used where a
/// wider range is known to be valid (the ideal description holds in every
/// degree for the O and SO families).
pub(crate) fn build_mt(family: Family, d: u32, r: u32, t_max: u32) -> Result<MtModule, MtError> {
    let label = MtModule::label(family, d, r);
    if r == 0 {
        return Ok(MtModule {
            family,
            d,
            r,
            module: TruncatedModule::zero(label, 0, t_max as i32),
            monomials: Vec::new(),
            spin: None,
        });
    }
    let lo = d - r + 1;
    let t_min = lo;
    if t_max < t_min {
        return Err(MtError::Parameters(format!("t_max = {t_max} is below the bottom class in degree {t_min}")));
    }
    let ring = CharRing::new(family, d, t_max)?;
    let span = t_max - t_min;
    let wbar = ring.dual_classes(span);
    let in_ideal = |m: &SwMonomial| m.max_index() as u32 >= lo;

    // Polynomial monomials of the ideal and, for spin, the quotient by J ∩ I.
    let mut ideal: Vec<Vec<SwMonomial>> = Vec::new();
    let mut reducers: Vec<Option<Subspace>> = Vec::new();
    let mut basis_pos: Vec<Vec<usize>> = Vec::new();
    for t in t_min..=t_max {
        let all = ring.monomials(t);
        let mono: Vec<SwMonomial> = all.iter().filter(|m| in_ideal(m)).cloned().collect();
        match ring.spin_ideal(t) {
            None => {
                basis_pos.push((0..mono.len()).collect());
                reducers.push(None);
            }
            Some(j) => {
                let (sub, std) = intersect_with_ideal(all, &mono, j);
                basis_pos.push(std);
                reducers.push(Some(sub));
            }
        }
        ideal.push(mono);
    }
    let ideal_index: Vec<HashMap<SwMonomial, usize>> = ideal
        .iter()
        .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    // Position of each ideal monomial in the module basis (spin: standard ones only).
    let basis_index: Vec<Vec<Option<usize>>> = ideal
        .iter()
        .zip(&basis_pos)
        .map(|(ms, pos)| {
            let mut v = vec![None; ms.len()];
            for (k, &p) in pos.iter().enumerate() {
                v[p] = Some(k);
            }
            v
        })
        .collect();

    let monomials: Vec<Vec<SwMonomial>> = ideal
        .iter()
        .zip(&basis_pos)
        .map(|(ms, pos)| pos.iter().map(|&p| ms[p].clone()).collect())
        .collect();
    let names: Vec<Vec<String>> = monomials.iter().map(|ms| ms.iter().map(|m| m.to_string()).collect()).collect();
    let truncated = true;
    let mut module = TruncatedModule::new(label, t_min as i32, names, truncated);

    for t in t_min..=t_max {
        let ti = (t - t_min) as usize;
        for k in 1..=(t_max - t) {
            let tk = ti + k as usize;
            let mut rows = Vec::with_capacity(monomials[ti].len());
            for m in &monomials[ti] {
                let x = RingElement::monomial(m.clone());
                let mut y = RingElement::zero(t + k);
                for j in 0..=k {
                    let sq = ring.sq_poly(j, &x);
                    if sq.is_zero() || wbar[(k - j) as usize].is_zero() {
                        continue;
                    }
                    y.add_assign(&sq.mul(&wbar[(k - j) as usize]));
                }
                // Coordinates over the ideal monomials.
                let mut v = F2Vector::zeros(ideal[tk].len());
                for term in &y.terms {
                    let Some(&i) = ideal_index[tk].get(term) else {
                        return Err(MtError::NotClosed { k, class: m.to_string() });
                    };
                    v.flip(i);
                }
                if let Some(sub) = &reducers[tk] {
                    v = sub.reduce(&v);
                }
                let mut row = F2Vector::zeros(monomials[tk].len());
                for i in v.iter_ones() {
                    match basis_index[tk][i] {
                        Some(b) => row.set(b, true),
                        None => unreachable!("reduced vector has support on standard monomials"),
                    }
                }
                rows.push(row);
            }
            module.set_action(k, t as i32, F2Matrix::from_rows(monomials[tk].len(), &rows));
        }
    }
    let spin = if family == Family::Spin {
        let data = ideal_index
            .into_iter()
            .zip(reducers)
            .zip(basis_index)
            .map(|((ideal_index, reducer), basis_index)| SpinDegree {
                ideal_index,
                reducer: reducer.expect("spin reducer"),
                basis_index,
            })
            .collect();
        Some(data)
    } else {
        None
    };
    Ok(MtModule { family, d, r, module, monomials, spin })
}

/// `J ∩ I` over the ideal monomials `mono` (a subset of `all`), and the
/// positions in `mono` of a complementary set of monomials.
fn intersect_with_ideal(all: &[SwMonomial], mono: &[SwMonomial], j: &Subspace) -> (Subspace, Vec<usize>) {
    let pos_in_ideal: HashMap<&SwMonomial, usize> = mono.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let outside: Vec<usize> = (0..all.len()).filter(|&i| !pos_in_ideal.contains_key(&all[i])).collect();
    let inside: Vec<usize> = (0..all.len()).filter(|&i| pos_in_ideal.contains_key(&all[i])).collect();
    // Columns ordered outside-first, so rows pivoting inside the ideal lie in it.
    let order: Vec<usize> = outside.iter().chain(inside.iter()).copied().collect();
    let mat = F2Matrix::from_rows(all.len(), j.basis()).select_columns(&order);
    let rref = mat.rref();
    let mut sub = Subspace::new(mono.len());
    for (row, &p) in rref.pivots.iter().enumerate() {
        if p < outside.len() {
            continue;
        }
        let mut v = F2Vector::zeros(mono.len());
        for c in rref.matrix.row(row).iter_ones() {
            debug_assert!(c >= outside.len());
            v.set(pos_in_ideal[&all[order[c]]], true);
        }
        sub.add(&v);
    }
    let mut is_pivot = vec![false; mono.len()];
    for v in sub.basis() {
        is_pivot[v.first_one().expect("nonzero")] = true;
    }
    let std = (0..mono.len()).filter(|&i| !is_pivot[i]).collect();
    (sub, std)
}

/// `H^*(ΣV_{d,r})` in the stable range: one class `y_i` in each degree
/// `d-r+1 <= i <= d`, with `Sq^k y_i = binom(i-1, k) y_{i+k}` (the stunted
/// projective space `RP^{d-1}/RP^{d-r-1}`, suspended once).
pub fn v_module(family: Family, d: u32, r: u32, t_max: u32) -> Result<TruncatedModule, MtError> {
    let _ = family;
    if r > d || r == 0 {
        return Err(MtError::Parameters(format!("need 1 <= r <= d, got r = {r}, d = {d}")));
    }
    let limit = 2 * (d - r) as i64 + 1;
    window((t_max as i64) <= limit, "t_max <= 2(d-r)+1 (stunted projective model of V_{d,r})", t_max as i64, limit)?;
    let lo = d - r + 1;
    if t_max < lo {
        return Err(MtError::Parameters(format!("t_max = {t_max} is below the bottom class in degree {lo}")));
    }
    let names = (lo..=t_max).map(|t| if t <= d { vec![format!("y{t}")] } else { Vec::new() }).collect();
    let mut m = TruncatedModule::new(format!("ΣV({d},{r})"), lo as i32, names, false);
    for i in lo..=d.min(t_max) {
        for k in 1..=(d.min(t_max) - i) {
            let mut a = F2Matrix::zeros(1, 1);
            a.set(0, 0, binom2((i - 1) as u64, k as u64));
            m.set_action(k, i as i32, a);
        }
    }
    Ok(m)
}

/// `H^*(C_θ)`: the kernel of the quotient map, with its inclusion into
/// `H^*(MT(d,r))`.
pub fn ctheta_module(family: Family, d: u32, r: u32, t_max: u32) -> Result<(TruncatedModule, ModuleMap), MtError> {
    if r > d || r == 0 {
        return Err(MtError::Parameters(format!("need 1 <= r <= d, got r = {r}, d = {d}")));
    }
    let limit = 2 * (d - r) as i64;
    window((t_max as i64) <= limit, "t_max <= 2(d-r) (cofiber description of C_θ)", t_max as i64, limit)?;
    let mt = mt_module(family, d, r, t_max)?;
    ctheta_of(&mt)
}

pub(crate) fn ctheta_of(mt: &MtModule) -> Result<(TruncatedModule, ModuleMap), MtError> {
    let (_, q) = mt.quotient_map()?;
    let m = &mt.module;
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for t in m.t_min()..=m.t_max() {
        let f = q.matrix(t).expect("in range");
        let kernel = f.left_kernel_basis();
        let ns = kernel
            .iter()
            .map(|v| {
                let terms: Vec<String> = v.iter_ones().map(|i| m.names(t)[i].clone()).collect();
                terms.join("+")
            })
            .collect();
        basis.push(kernel);
        names.push(ns);
    }
    let label = format!("Cθ{}({},{})", mt.family, mt.d, mt.r);
    Ok(m.submodule(label, basis, names)?)
}

/// `Σ^d H̃^*(B(d))`: the summand of `H^*(MT(d,1))` above the Thom class.
/// The Thom class spans a trivial summand since `Sq^k φ(w_d) = φ(w_d w̄_k)`
/// sums to zero over the Cartan terms.
pub fn reduced_bundle_module(family: Family, d: u32, t_max: u32) -> Result<(TruncatedModule, ModuleMap), MtError> {
    let mt = mt_module(family, d, 1, t_max)?;
    let m = &mt.module;
    let mut basis = Vec::new();
    let mut names = Vec::new();
    for t in m.t_min()..=m.t_max() {
        let n = m.dim(t);
        if t <= d as i32 {
            basis.push(Vec::new());
            names.push(Vec::new());
        } else {
            basis.push((0..n).map(|i| F2Vector::unit(n, i)).collect());
            names.push(m.names(t).to_vec());
        }
    }
    let label = format!("Σ^{d}B{}({d})", family);
    Ok(m.submodule(label, basis, names)?)
}

/// The map `H^*(MT(d,r)) -> H^*(MT(d-1,r-1))` induced by `B(d-1) -> B(d)`:
/// monomials involving `w_d` go to zero, the rest to themselves.
pub fn restriction_map(family: Family, d: u32, r: u32, t_max: u32) -> Result<(MtModule, MtModule, ModuleMap), MtError> {
    if r < 1 || d < 2 {
        return Err(MtError::Parameters("restriction needs r >= 1 and d >= 2".into()));
    }
    let src = mt_module(family, d, r, t_max)?;
    let tgt = mt_module(family, d - 1, r - 1, t_max)?;
    let mut mats = Vec::new();
    for t in src.module.t_min()..=src.module.t_max() {
        let mut m = F2Matrix::zeros(src.module.dim(t), tgt.module.dim(t));
        for (i, mono) in src.monomials(t).iter().enumerate() {
            if mono.exponent(d as u16) > 0 {
                continue;
            }
            if let Some(j) = tgt.index_of(mono) {
                m.set(i, j, true);
            } else if tgt.module.dim(t) > 0 {
                return Err(MtError::Parameters(format!("{mono} has no image in {}", tgt.module.label())));
            }
        }
        mats.push(m);
    }
    let map = ModuleMap::new(
        src.module.label().to_string(),
        tgt.module.label().to_string(),
        src.module.t_min(),
        0,
        mats,
    );
    Ok((src, tgt, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(mt: &MtModule, pairs: &[&[(u16, u16)]]) -> F2Vector {
        let mut x = RingElement::zero(SwMonomial::from_pairs(pairs[0]).degree());
        for p in pairs {
            x.toggle(SwMonomial::from_pairs(p));
        }
        mt.vector_of(&x).unwrap()
    }

    #[test]
    fn first_column_of_mtso_15_4() {
        let mt = mt_module(Family::SO, 15, 4, 17).unwrap();
        let m = &mt.module;
        let x = class(&mt, &[&[(12, 1)]]);
        assert_eq!(m.act(1, 12, &x).unwrap(), class(&mt, &[&[(13, 1)]]));
        assert_eq!(m.act(2, 12, &x).unwrap(), class(&mt, &[&[(14, 1)]]));
        assert!(m.act_sequence(&[2, 1], 12, &x).unwrap().is_zero());
        m.check_adem().unwrap();
    }

    #[test]
    fn r_zero_is_empty() {
        let mt = mt_module(Family::SO, 10, 0, 12).unwrap();
        assert_eq!(mt.module.total_dim(), 0);
    }

    #[test]
    fn window_is_enforced() {
        assert!(matches!(mt_module(Family::SO, 10, 4, 14), Err(MtError::Window { .. })));
        assert!(mt_module(Family::SO, 10, 4, 13).is_ok());
    }

    #[test]
    fn ctheta_bottom_class() {
        let (c, inc) = ctheta_module(Family::SO, 14, 3, 20).unwrap();
        assert_eq!(c.bottom(), Some(14));
        assert_eq!(c.names(14), ["w2w12"]);
        c.check_adem().unwrap();
        let mt = mt_module(Family::SO, 14, 3, 20).unwrap();
        inc.check_commutes(&c, &mt.module).unwrap();
    }

    #[test]
    fn quotient_map_is_a_module_map() {
        for d in 12..16 {
            let mt = mt_module(Family::SO, d, 4, 2 * (d - 4)).unwrap();
            let (v, q) = mt.quotient_map().unwrap();
            v.check_adem().unwrap();
            q.check_commutes(&mt.module, &v).unwrap();
        }
    }
}
