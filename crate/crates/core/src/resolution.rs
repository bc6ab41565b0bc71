//! Minimal free resolutions over the Steenrod algebra.
//!
//! The resolution is built one internal degree at a time. In degree `t`,
//! stage `s` first maps its existing generators into stage `s-1` (or the
//! module when `s = 0`), then adds one new generator for each vector of the
//! kernel one stage down that is not yet hit. New generators are taken from
//! the kernel basis in order, which keeps the output deterministic, and the
//! construction never creates unit coefficients, so the result is minimal
//! and `Ext^{s,t}` is spanned by the duals of the generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::f2linalg::{F2Matrix, F2Vector, Subspace};
use crate::mtmod::{ModuleError, ModuleMap, TruncatedModule};
use crate::par::{self, Exec};
use crate::steenrod::SteenrodAlgebra;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("resolution of {label} is not exact at (s={s}, t={t})")]
    NotExact { label: String, s: usize, t: i32 },
    #[error("resolution of {label} is not minimal: generator {name} has a unit coefficient")]
    NotMinimal { label: String, name: String },
    #[error("cannot lift the module map at (s={s}, t={t})")]
    LiftFailed { s: usize, t: i32 },
    #[error("resolutions cover different windows")]
    WindowMismatch,
    #[error("only degree-preserving maps can be lifted")]
    ShiftedMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Default)]
pub struct FreeStage {
    pub generators: Vec<Generator>,
    /// `d(g)` over the degree-`g.degree` basis of the previous stage (or of
    /// the module for stage 0).
    pub differentials: Vec<F2Vector>,
}

impl FreeStage {
    pub fn degrees(&self) -> Vec<i32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn count_in_degree(&self, t: i32) -> usize {
        self.generators.iter().filter(|g| g.degree == t).count()
    }
}

const STAGE_LETTERS: [&str; 11] = ["x", "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ"];

fn generator_name(s: usize, i: usize) -> String {
    match STAGE_LETTERS.get(s) {
        Some(l) => format!("{l}_{i}"),
        None => format!("g{s}_{i}"),
    }
}

pub struct MinimalResolution {
    module: TruncatedModule,
    algebra: Arc<SteenrodAlgebra>,
    s_max: usize,
    t_max: i32,
    stages: Vec<FreeStage>,
    /// `dmats[s][t - t0]`: rows over `F_s` in degree `t`, columns over the
    /// previous stage (or the module) in degree `t`.
    dmats: Vec<Vec<F2Matrix>>,
    t0: i32,
}

impl std::fmt::Debug for MinimalResolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MinimalResolution")
            .field("module", &self.module.label())
            .field("s_max", &self.s_max)
            .field("t_max", &self.t_max)
            .finish()
    }
}

impl MinimalResolution {
    /// Resolve `module` through stage `s_max` and internal degree `t_max`.
    pub fn new(module: &TruncatedModule, s_max: usize, t_max: i32) -> Result<Self, ResolutionError> {
        Self::with_exec(module, s_max, t_max, Exec::current())
    }

    pub fn with_exec(module: &TruncatedModule, s_max: usize, t_max: i32, exec: Exec) -> Result<Self, ResolutionError> {
        let t0 = module.t_min();
        let top = (t_max - t0).max(0) as u32;
        let algebra = Arc::new(SteenrodAlgebra::new(top));
        let mut res = MinimalResolution {
            module: module.clone(),
            algebra,
            s_max,
            t_max,
            stages: vec![FreeStage::default(); s_max + 1],
            dmats: vec![Vec::new(); s_max + 1],
            t0,
        };
        for t in t0..=t_max {
            for s in 0..=s_max {
                res.step(s, t, exec)?;
            }
        }
        Ok(res)
    }

    pub fn module(&self) -> &TruncatedModule {
        &self.module
    }

    pub fn algebra(&self) -> &SteenrodAlgebra {
        &self.algebra
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn t_max(&self) -> i32 {
        self.t_max
    }

    pub fn stage(&self, s: usize) -> &FreeStage {
        &self.stages[s]
    }

    pub fn stages(&self) -> &[FreeStage] {
        &self.stages
    }

    /// Whether `Ext^{s,t}` computed here equals that of the untruncated module.
    pub fn is_exact(&self, s: usize, t: i32) -> bool {
        if s > self.s_max || t > self.t_max {
            return false;
        }
        match self.module.exact_stem_bound() {
            Some(b) => t - s as i32 <= b,
            None => true,
        }
    }

    /// `(generator index, offset)` for every generator of `F_s` of degree
    /// `<= t`, and the total dimension of `F_s` in degree `t`.
    fn layout(&self, s: usize, t: i32) -> (Vec<(usize, usize)>, usize) {
        let mut out = Vec::new();
        let mut off = 0;
        for (i, g) in self.stages[s].generators.iter().enumerate() {
            if g.degree > t {
                break;
            }
            out.push((i, off));
            off += self.algebra.dim((t - g.degree) as u32);
        }
        (out, off)
    }

    /// Dimension of `F_s` in degree `t` (or of the module for `s = -1`).
    fn target_dim(&self, s: isize, t: i32) -> usize {
        if s < 0 {
            self.module.dim(t)
        } else {
            self.layout(s as usize, t).1
        }
    }

    /// Offset of generator `g` of `F_s` inside the degree-`t` basis.
    fn offset_of(&self, s: usize, g: usize, t: i32) -> usize {
        let mut off = 0;
        for h in &self.stages[s].generators[..g] {
            off += self.algebra.dim((t - h.degree) as u32);
        }
        off
    }

    /// `Sq^I` (admissible basis element `i` of degree `n`) applied to `v`,
    /// an element of `F_s` in degree `t`.
    fn act_free(&self, s: usize, n: u32, i: usize, t: i32, v: &F2Vector) -> F2Vector {
        let (lay, _) = self.layout(s, t);
        let (out_lay, out_dim) = self.layout(s, t + n as i32);
        let mut out = F2Vector::zeros(out_dim);
        for (k, &(g, off)) in lay.iter().enumerate() {
            let gd = self.stages[s].generators[g].degree;
            let jdeg = (t - gd) as u32;
            let block = self.algebra.dim(jdeg);
            let out_off = out_lay[k].1;
            for j in 0..block {
                if !v.get(off + j) {
                    continue;
                }
                let prod = self.algebra.mul_basis(n, i, jdeg, j).expect("within algebra range");
                for b in prod.iter_ones() {
                    out.flip(out_off + b);
                }
            }
        }
        out
    }

    /// Image of basis element `(g, Sq^I)` of `F_s` in degree `t`.
    fn image_of(&self, s: usize, g: usize, i: usize, t: i32) -> Result<F2Vector, ResolutionError> {
        let gen = &self.stages[s].generators[g];
        let n = (t - gen.degree) as u32;
        let dg = &self.stages[s].differentials[g];
        if s == 0 {
            if t > self.module.t_max() {
                return Ok(F2Vector::zeros(0));
            }
            let seq = self.algebra.basis(n)[i].seq().to_vec();
            return Ok(self.module.act_sequence(&seq, gen.degree, dg)?);
        }
        Ok(self.act_free(s - 1, n, i, gen.degree, dg))
    }

    fn step(&mut self, s: usize, t: i32, exec: Exec) -> Result<(), ResolutionError> {
        let cols = self.target_dim(s as isize - 1, t);
        let (lay, _) = self.layout(s, t);
        let mut items = Vec::new();
        for &(g, _) in &lay {
            let n = (t - self.stages[s].generators[g].degree) as u32;
            for i in 0..self.algebra.dim(n) {
                items.push((g, i));
            }
        }
        let rows: Result<Vec<F2Vector>, ResolutionError> =
            par::map(exec, &items, |&(g, i)| self.image_of(s, g, i, t)).into_iter().collect();
        let mut rows = rows?;

        // Kernel one stage down (everything, for the module).
        let kernel: Vec<F2Vector> = if s == 0 {
            (0..cols).map(|i| F2Vector::unit(cols, i)).collect()
        } else {
            let prev = &self.dmats[s - 1][(t - self.t0) as usize];
            prev.left_kernel_basis()
        };
        let mut image = Subspace::new(cols);
        for r in &rows {
            image.add(r);
        }
        let mut added = 0;
        for k in &kernel {
            if image.add(k) {
                added += 1;
                let idx = self.stages[s].generators.len();
                self.stages[s].generators.push(Generator { name: generator_name(s, idx + 1), degree: t });
                self.stages[s].differentials.push(k.clone());
                rows.push(k.clone());
            }
        }
        let _ = added;
        if image.dim() != kernel.len() {
            return Err(ResolutionError::NotExact { label: self.module.label().to_string(), s, t });
        }
        self.dmats[s].push(F2Matrix::from_rows(cols, &rows));
        Ok(())
    }

    /// `d_s` in degree `t` (rows over `F_s`, columns over `F_{s-1}` or the module).
    pub fn differential_matrix(&self, s: usize, t: i32) -> Option<&F2Matrix> {
        if t < self.t0 {
            return None;
        }
        self.dmats.get(s)?.get((t - self.t0) as usize)
    }

    /// Re-check exactness (`d∘d = 0` and kernel = image) and minimality.
    pub fn verify(&self) -> Result<(), ResolutionError> {
        let label = self.module.label().to_string();
        for s in 0..=self.s_max {
            for t in self.t0..=self.t_max {
                let d = self.differential_matrix(s, t).expect("computed");
                let kernel_dim = if s == 0 {
                    self.module.dim(t)
                } else {
                    let prev = self.differential_matrix(s - 1, t).expect("computed");
                    if !d.mul(prev).is_zero() {
                        return Err(ResolutionError::NotExact { label, s, t });
                    }
                    prev.rows() - prev.rank()
                };
                if d.rank() != kernel_dim {
                    return Err(ResolutionError::NotExact { label, s, t });
                }
            }
            // No generator's differential hits a unit multiple of a generator.
            if s >= 1 {
                for (g, dg) in self.stages[s].generators.iter().zip(&self.stages[s].differentials) {
                    let (lay, _) = self.layout(s - 1, g.degree);
                    for &(h, off) in &lay {
                        if self.stages[s - 1].generators[h].degree == g.degree && dg.get(off) {
                            return Err(ResolutionError::NotMinimal { label, name: g.name.clone() });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Coefficient matrix of `Sq^{2^j}` from generators of `F_s` in degree `t`
    /// to generators of `F_{s+1}` in degree `t + 2^j`: entry `(a, b)` is the
    /// coefficient of `Sq^{2^j} g_a` in `d(g_b)`. This is multiplication by
    /// `h_j` on Ext in dual bases.
    pub fn h_product(&self, j: u32, s: usize, t: i32) -> Option<F2Matrix> {
        let step = 1i32 << j;
        if s + 1 > self.s_max || t + step > self.t_max {
            return None;
        }
        let src: Vec<usize> = (0..self.stages[s].generators.len())
            .filter(|&g| self.stages[s].generators[g].degree == t)
            .collect();
        let tgt: Vec<usize> = (0..self.stages[s + 1].generators.len())
            .filter(|&g| self.stages[s + 1].generators[g].degree == t + step)
            .collect();
        let sq = crate::steenrod::AdmissibleMonomial::sq(step as u32);
        let idx = self.algebra.index_of(&sq).expect("Sq^{2^j} in range");
        let mut m = F2Matrix::zeros(src.len(), tgt.len());
        for (a, &ga) in src.iter().enumerate() {
            let off = self.offset_of(s, ga, t + step) + idx;
            for (b, &gb) in tgt.iter().enumerate() {
                if self.stages[s + 1].differentials[gb].get(off) {
                    m.set(a, b, true);
                }
            }
        }
        Some(m)
    }

    /// Human-readable expression for an element of `F_s` in degree `t`.
    pub fn describe(&self, s: usize, t: i32, v: &F2Vector) -> String {
        let (lay, _) = self.layout(s, t);
        let mut terms = Vec::new();
        for &(g, off) in &lay {
            let gen = &self.stages[s].generators[g];
            let n = (t - gen.degree) as u32;
            for (i, m) in self.algebra.basis(n).iter().enumerate() {
                if v.get(off + i) {
                    if n == 0 {
                        terms.push(gen.name.clone());
                    } else {
                        terms.push(format!("{m} {}", gen.name));
                    }
                }
            }
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    /// `d(g)` as text.
    pub fn describe_differential(&self, s: usize, g: usize) -> String {
        let gen = &self.stages[s].generators[g];
        let v = &self.stages[s].differentials[g];
        if s == 0 {
            let names = self.module.names(gen.degree);
            let terms: Vec<&str> = v.iter_ones().map(|i| names[i].as_str()).collect();
            return terms.join(" + ");
        }
        self.describe(s - 1, gen.degree, v)
    }

    /// Structured dump: one line per generator with its differential.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "resolution {}", self.module.label());
        let _ = writeln!(out, "window s_max {} t_max {}", self.s_max, self.t_max);
        for (s, st) in self.stages.iter().enumerate() {
            let _ = writeln!(out, "stage {s} generators {}", st.generators.len());
            for (g, gen) in st.generators.iter().enumerate() {
                let _ = writeln!(out, "gen {s} {} {} d = {}", gen.name, gen.degree, self.describe_differential(s, g));
            }
        }
        out.push_str("end\n");
        out
    }
}

/// `dim Ext^{s,t}` and the `h_0`, `h_1` products, restricted to the cells
/// where the truncated computation is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub label: String,
    pub s_max: usize,
    pub t_max: i32,
    pub exact_stem_bound: Option<i32>,
    /// Lowest degree of the module; `Ext^{s,t}` vanishes for `t - s` below it.
    pub connectivity: Option<i32>,
    /// Keyed by `(s, t)`.
    pub dims: BTreeMap<(usize, i32), usize>,
    /// `h0[(s,t)]` maps the `(s,t)` cell to `(s+1, t+1)`.
    pub h0: BTreeMap<(usize, i32), F2Matrix>,
    /// `h1[(s,t)]` maps the `(s,t)` cell to `(s+1, t+2)`.
    pub h1: BTreeMap<(usize, i32), F2Matrix>,
    pub names: BTreeMap<(usize, i32), Vec<String>>,
}

impl ExtTable {
    pub fn from_resolution(res: &MinimalResolution) -> ExtTable {
        let mut dims = BTreeMap::new();
        let mut names = BTreeMap::new();
        let mut h0 = BTreeMap::new();
        let mut h1 = BTreeMap::new();
        for s in 0..=res.s_max {
            for t in res.t0..=res.t_max {
                if !res.is_exact(s, t) {
                    continue;
                }
                let gens: Vec<String> = res.stages[s]
                    .generators
                    .iter()
                    .filter(|g| g.degree == t)
                    .map(|g| g.name.clone())
                    .collect();
                dims.insert((s, t), gens.len());
                names.insert((s, t), gens);
            }
        }
        for &(s, t) in dims.keys() {
            if res.is_exact(s + 1, t + 1) {
                if let Some(m) = res.h_product(0, s, t) {
                    h0.insert((s, t), m);
                }
            }
            if res.is_exact(s + 1, t + 2) {
                if let Some(m) = res.h_product(1, s, t) {
                    h1.insert((s, t), m);
                }
            }
        }
        ExtTable {
            label: res.module.label().to_string(),
            s_max: res.s_max,
            t_max: res.t_max,
            exact_stem_bound: res.module.exact_stem_bound(),
            connectivity: res.module.bottom(),
            dims,
            h0,
            h1,
            names,
        }
    }

    /// `None` when the cell lies outside the exact window.
    pub fn dim(&self, s: usize, t: i32) -> Option<usize> {
        self.dims.get(&(s, t)).copied()
    }
}

pub fn ext_table(res: &MinimalResolution) -> ExtTable {
    ExtTable::from_resolution(res)
}

/// A chain map between resolutions lifting a module map `M -> N`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    /// `images[s][g]`: image of generator `g` of the source stage `s`, over
    /// the target stage `s` in the same degree.
    pub images: Vec<Vec<F2Vector>>,
}

/// Lift `phi: M -> N` to resolutions `src` of `M` and `tgt` of `N`. The
/// induced map on Ext goes from `N` to `M`; see [`induced_ext_map`].
pub fn lift_map(phi: &ModuleMap, src: &MinimalResolution, tgt: &MinimalResolution) -> Result<ChainMap, ResolutionError> {
    if phi.shift != 0 {
        return Err(ResolutionError::ShiftedMap);
    }
    if src.s_max != tgt.s_max || src.t_max != tgt.t_max {
        return Err(ResolutionError::WindowMismatch);
    }
    let mut images: Vec<Vec<F2Vector>> = vec![Vec::new(); src.s_max + 1];
    for s in 0..=src.s_max {
        for (g, gen) in src.stages[s].generators.iter().enumerate() {
            let t = gen.degree;
            let want = if s == 0 {
                let dg = &src.stages[0].differentials[g];
                match phi.apply(t, dg) {
                    Some(v) => v,
                    None => F2Vector::zeros(tgt.module.dim(t)),
                }
            } else {
                // f_{s-1}(d g) = sum over terms Sq^I h of Sq^I f_{s-1}(h).
                let dg = &src.stages[s].differentials[g];
                let (lay, _) = src.layout(s - 1, t);
                let mut acc = F2Vector::zeros(tgt.layout(s - 1, t).1);
                for &(h, off) in &lay {
                    let hd = src.stages[s - 1].generators[h].degree;
                    let n = (t - hd) as u32;
                    for i in 0..src.algebra.dim(n) {
                        if dg.get(off + i) {
                            let fh = &images[s - 1][h];
                            acc.add_assign(&tgt.act_free(s - 1, n, i, hd, fh));
                        }
                    }
                }
                acc
            };
            let d = tgt.differential_matrix(s, t).ok_or(ResolutionError::LiftFailed { s, t })?;
            let x = d.transpose().solve(&want).ok_or(ResolutionError::LiftFailed { s, t })?;
            images[s].push(x);
        }
    }
    Ok(ChainMap { images })
}

/// Matrix of the induced map `Ext^{s,t}(N) -> Ext^{s,t}(M)` in the dual
/// generator bases: rows are generators of the target resolution in the
/// cell, columns generators of the source resolution.
pub fn induced_ext_map(chain: &ChainMap, src: &MinimalResolution, tgt: &MinimalResolution, s: usize, t: i32) -> F2Matrix {
    let src_gens: Vec<usize> =
        (0..src.stages[s].generators.len()).filter(|&g| src.stages[s].generators[g].degree == t).collect();
    let tgt_gens: Vec<usize> =
        (0..tgt.stages[s].generators.len()).filter(|&g| tgt.stages[s].generators[g].degree == t).collect();
    let mut m = F2Matrix::zeros(tgt_gens.len(), src_gens.len());
    for (b, &g) in src_gens.iter().enumerate() {
        let img = &chain.images[s][g];
        for (a, &h) in tgt_gens.iter().enumerate() {
            let off = tgt.offset_of(s, h, t);
            if img.get(off) {
                m.set(a, b, true);
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_low_stems() {
        let res = MinimalResolution::new(&TruncatedModule::sphere(), 4, 8).unwrap();
        res.verify().unwrap();
        let ext = ext_table(&res);
        // h_0 tower in stem 0, h_1 in stem 1, h_1^2 in stem 2, h_2 and h_0^k h_2 in stem 3.
        assert_eq!(ext.dim(0, 0), Some(1));
        assert_eq!(ext.dim(1, 1), Some(1));
        assert_eq!(ext.dim(1, 2), Some(1));
        assert_eq!(ext.dim(2, 4), Some(1));
        assert_eq!(ext.dim(1, 4), Some(1));
        assert_eq!(ext.dim(2, 5), Some(1));
        assert_eq!(ext.dim(3, 6), Some(1));
        assert_eq!(ext.dim(1, 3), Some(0));
        assert_eq!(ext.h0[&(0, 0)].rows(), 1);
        assert!(ext.h0[&(0, 0)].get(0, 0));
        assert!(ext.h1[&(0, 0)].get(0, 0));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = MinimalResolution::with_exec(&TruncatedModule::sphere(), 5, 12, Exec::Sequential).unwrap();
        let b = MinimalResolution::with_exec(&TruncatedModule::sphere(), 5, 12, Exec::Parallel).unwrap();
        assert_eq!(a.dump(), b.dump());
    }
}
