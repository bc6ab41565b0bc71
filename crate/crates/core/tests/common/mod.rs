//! Property suites shared by the `properties` and `acceptance` targets.
//! Each returns a one-line summary or the first counterexample.

#![allow(dead_code)]

use mtss::charrings::Family;
use mtss::charts::{build_chart, column_strings, parse_structured, render, ChartWindow, E2Chart, RenderFormat};
use mtss::f2linalg::{F2Matrix, F2Vector, Subspace};
use mtss::mtmod::{ctheta_module, mt_module, reduced_bundle_module, v_module, ModuleMap, TruncatedModule};
use mtss::par::Exec;
use mtss::resolution::{ext_table, induced_ext_map, lift_map, MinimalResolution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Suite = Result<String, String>;

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> F2Matrix {
    let density: f64 = rng.gen_range(0.05..0.95);
    let mut m = F2Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Rank-nullity and kernel bases on one matrix, against brute force over
/// all `2^cols` vectors.
pub fn check_matrix(m: &F2Matrix) -> Result<(), String> {
    let (rows, cols) = (m.rows(), m.cols());
    let rank = m.rank();
    let ker = m.kernel_basis();
    if rank + ker.len() != cols {
        return Err(format!("{rows}x{cols}: rank {rank} + nullity {} != {cols}", ker.len()));
    }
    if m.transpose().rank() != rank {
        return Err(format!("{rows}x{cols}: row rank differs from column rank"));
    }
    if m.rref_with(Exec::Sequential).matrix != m.rref_with(Exec::Parallel).matrix {
        return Err(format!("{rows}x{cols}: sequential and parallel rref differ"));
    }
    let mut span = Subspace::new(cols);
    for v in &ker {
        if !m.mul_vec(v).is_zero() || !span.add(v) {
            return Err(format!("{rows}x{cols}: bad kernel basis vector {v}"));
        }
    }
    if cols <= 12 {
        let mut count = 0usize;
        for bits in 0u32..(1 << cols) {
            let ones: Vec<usize> = (0..cols).filter(|i| bits >> i & 1 == 1).collect();
            let v = F2Vector::from_indices(cols, &ones);
            if m.mul_vec(&v).is_zero() {
                count += 1;
                if !span.contains(&v) {
                    return Err(format!("{rows}x{cols}: kernel vector {v} missed"));
                }
            }
        }
        if count != 1 << ker.len() {
            return Err(format!("{rows}x{cols}: {count} kernel vectors, expected 2^{}", ker.len()));
        }
    }
    let left = m.left_kernel_basis();
    if rank + left.len() != rows || left.iter().any(|v| !m.vec_mul(v).is_zero()) {
        return Err(format!("{rows}x{cols}: bad left kernel"));
    }
    Ok(())
}

pub fn rank_nullity_suite(count: usize, seed: u64) -> Suite {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let rows = rng.gen_range(1..=16);
        let cols = rng.gen_range(1..=12);
        check_matrix(&random_matrix(&mut rng, rows, cols))?;
    }
    Ok(format!("{count} random matrices up to 16x12, kernels checked exhaustively"))
}

/// The modules the pipeline builds, at small windows.
pub fn module_zoo() -> Vec<TruncatedModule> {
    let mut out = vec![TruncatedModule::sphere().truncate(12)];
    for (fam, d, r, t) in [
        (Family::SO, 15, 4, 19),
        (Family::SO, 12, 2, 17),
        (Family::SO, 13, 3, 17),
        (Family::SO, 16, 5, 17),
        (Family::O, 13, 4, 16),
        (Family::O, 10, 1, 14),
        (Family::Spin, 18, 5, 21),
    ] {
        out.push(mt_module(fam, d, r, t).expect("zoo module").module);
    }
    out.push(ctheta_module(Family::SO, 14, 3, 18).unwrap().0);
    out.push(ctheta_module(Family::Spin, 17, 5, 20).unwrap().0);
    out.push(reduced_bundle_module(Family::SO, 14, 20).unwrap().0);
    out.push(reduced_bundle_module(Family::O, 10, 15).unwrap().0);
    out.push(reduced_bundle_module(Family::Spin, 18, 26).unwrap().0);
    out.push(v_module(Family::SO, 15, 4, 19).unwrap());
    out
}

pub fn adem_suite(modules: &[TruncatedModule]) -> Suite {
    for m in modules {
        m.check_adem().map_err(|e| format!("{}: {e}", m.label()))?;
    }
    Ok(format!("Adem relations hold on {} modules", modules.len()))
}

pub fn resolve(m: &TruncatedModule, s_max: usize, exec: Exec) -> MinimalResolution {
    MinimalResolution::with_exec(m, s_max, m.t_max() + s_max as i32, exec).expect("resolution")
}

pub fn resolution_suite(modules: &[TruncatedModule]) -> Suite {
    for m in modules {
        let par = resolve(m, 4, Exec::Parallel);
        par.verify().map_err(|e| format!("{}: {e}", m.label()))?;
        let seq = resolve(m, 4, Exec::Sequential);
        if seq.dump() != par.dump() {
            return Err(format!("{}: sequential and parallel resolutions differ", m.label()));
        }
    }
    Ok(format!("{} resolutions exact and minimal, sequential = parallel", modules.len()))
}

fn identity_map(m: &TruncatedModule) -> ModuleMap {
    let mats = (m.t_min()..=m.t_max()).map(|t| F2Matrix::identity(m.dim(t))).collect();
    ModuleMap::new(m.label().to_string(), m.label().to_string(), m.t_min(), 0, mats)
}

/// Lifting the identity gives the identity on every Ext cell.
pub fn lift_identity_suite(modules: &[TruncatedModule]) -> Suite {
    let mut cells = 0;
    for m in modules {
        let res = resolve(m, 3, Exec::current());
        let chain = lift_map(&identity_map(m), &res, &res).map_err(|e| format!("{}: {e}", m.label()))?;
        for s in 0..=3 {
            for t in m.t_min()..=res.t_max() {
                let e = induced_ext_map(&chain, &res, &res, s, t);
                if e != F2Matrix::identity(e.rows()) {
                    return Err(format!("{}: identity does not induce identity at ({s}, {t})", m.label()));
                }
                cells += 1;
            }
        }
    }
    Ok(format!("identity lifts to identity on {cells} cells"))
}

/// Dimension of `ker Sq^1 / im Sq^1` in degree `t`.
pub fn q0_homology(m: &TruncatedModule, t: i32) -> usize {
    let rank = |t: i32| if m.dim(t) == 0 || t + 1 > m.t_max() { 0 } else { m.action(1, t).unwrap().rank() };
    m.dim(t) - rank(t) - rank(t - 1)
}

/// Open h0-strings in a stem against the Sq^1-homology of the module.
pub fn q0_tower_suite(modules: &[TruncatedModule]) -> Suite {
    const S_MAX: usize = 10;
    let mut stems = 0;
    for m in modules {
        let lo = m.t_min();
        let hi = (lo + 5).min(m.t_max() - 1);
        let res = resolve(&m.truncate(hi + 1), S_MAX, Exec::current());
        let chart = build_chart(&ext_table(&res), ChartWindow::new(lo, hi, S_MAX)).map_err(|e| e.to_string())?;
        for stem in lo..=hi {
            let towers = column_strings(&chart, stem).iter().filter(|s| s.open).count();
            let q0 = q0_homology(m, stem);
            if towers != q0 {
                return Err(format!("{} stem {stem}: {towers} towers, Q0-homology {q0}", m.label()));
            }
            stems += 1;
        }
    }
    Ok(format!("tower count = Q0-homology in {stems} stems"))
}

pub fn random_chart(rng: &mut impl Rng) -> E2Chart {
    let lo = rng.gen_range(-3..20);
    let window = ChartWindow::new(lo, lo + rng.gen_range(0..6), rng.gen_range(0..6));
    let mut c = E2Chart::empty(format!("random {}", rng.gen::<u16>()), window);
    c.connectivity = rng.gen_bool(0.9).then_some(lo);
    for n in window.stem_lo..=window.stem_hi {
        for s in 0..=window.s_max {
            if rng.gen_bool(0.5) {
                c.dots.insert((n, s), rng.gen_range(1..4));
            }
        }
    }
    for n in window.stem_lo..=window.stem_hi {
        for s in 0..window.s_max {
            for (dn, is_h0) in [(0, true), (1, false)] {
                if n + dn > window.stem_hi {
                    continue;
                }
                let m = random_matrix(rng, c.dim(n, s), c.dim(n + dn, s + 1));
                if !m.is_zero() {
                    if is_h0 {
                        c.h0.insert((n, s), m);
                    } else {
                        c.h1.insert((n, s), m);
                    }
                }
            }
        }
    }
    c
}

pub fn round_trip(c: &E2Chart) -> Result<(), String> {
    c.check()?;
    let text = render(c, RenderFormat::Structured);
    let back = parse_structured(&text).map_err(|e| format!("{}: {e}", c.label))?;
    if &back != c {
        return Err(format!("{}: structured round trip changed the chart", c.label));
    }
    Ok(())
}

pub fn round_trip_suite(modules: &[TruncatedModule], random: usize, seed: u64) -> Suite {
    for m in modules {
        let res = resolve(m, 4, Exec::current());
        let hi = (m.t_min() + 5).min(m.t_max() - 1);
        let chart = build_chart(&ext_table(&res), ChartWindow::new(m.t_min(), hi, 4)).map_err(|e| e.to_string())?;
        round_trip(&chart)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random {
        round_trip(&random_chart(&mut rng))?;
    }
    Ok(format!("{} computed and {random} random charts round-trip", modules.len()))
}
