//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.
//!
//! Criterion 3 has one known failure: the drawn chart for MTSO(d,4),
//! d = 3 mod 4, disagrees with the computed E2 page in stem d+1. The test
//! asserts that exactly that chart fails, so any new failure (or a fix)
//! shows up as a test failure.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use mtss::charrings::{CharRing, CoefficientField, Family, PontryaginRing, RingElement, SwMonomial};
use mtss::charrings::p1_power_action;
use mtss::charts::{compare_chart_fixture, ChartFixture};
use mtss::f2linalg::F2Vector;
use mtss::mtmod::{mt_module, periodicity_check, MtModule};
use mtss::par::Exec;
use mtss::resolution::MinimalResolution;
use mtss::tables::{check_sequences, rational_rank, sphere_selftest, verify_fixture_set, ClaimFilter, FixtureSet, Verdict};

const SPHERE_LIMIT: Duration = Duration::from_secs(10);
const FIGURE_LIMIT: Duration = Duration::from_secs(30);
const CHART_LIMIT: Duration = Duration::from_secs(120);
const PROPERTY_LIMIT: Duration = Duration::from_secs(600);
/// Generous bound for criteria without a stated runtime.
const DEFAULT_LIMIT: Duration = Duration::from_secs(300);

/// The one chart fixture expected to disagree with the computation.
const KNOWN_CHART_FAILURES: &[&str] = &["so-r4-3 d=15", "so-r4-3 d=19"];

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_files(sub: &str, ext: &str) -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(fixtures().join(sub))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    files.sort();
    files
}

fn table_sets() -> Vec<FixtureSet> {
    fixture_files("tables", "toml").iter().map(|p| FixtureSet::load(p).unwrap()).collect()
}

struct Outcome {
    passed: bool,
    detail: String,
    /// Labels of failing sub-checks, for pinning.
    failures: Vec<String>,
}

impl Outcome {
    fn from(r: Result<String, String>) -> Self {
        match r {
            Ok(detail) => Outcome { passed: true, detail, failures: vec![] },
            Err(detail) => Outcome { passed: false, detail, failures: vec![] },
        }
    }
}

fn run(n: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let elapsed = start.elapsed();
    if elapsed > limit {
        out.passed = false;
        out.detail = format!("{} (too slow)", out.detail);
    }
    println!(
        "{} [{n:>2}] {name} ({:.2}s, limit {}s): {}",
        if out.passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs(),
        out.detail
    );
    out
}

fn sphere() -> Outcome {
    let checks = match sphere_selftest(7, 9, Exec::current()) {
        Ok(c) => c,
        Err(e) => return Outcome::from(Err(e.to_string())),
    };
    let got: Vec<String> = checks.iter().map(|c| c.computed.as_ref().map_or("?".into(), |g| g.to_string())).collect();
    let want = ["Z", "Z/2", "Z/2", "Z/8", "0", "0", "Z/2", "Z/16"];
    let exact = checks.iter().all(|c| c.verdict == Verdict::Exact) && got == want;
    let r = format!("stems 0..7 = {}", got.join(", "));
    Outcome::from(if exact { Ok(r) } else { Err(r) })
}

fn figure_one() -> Outcome {
    Outcome::from((|| {
        let mt = mt_module(Family::SO, 15, 4, 17).map_err(|e| e.to_string())?;
        let res = MinimalResolution::new(&mt.module, 3, 17).map_err(|e| e.to_string())?;
        let degrees = |s: usize, top: i32| -> Vec<i32> {
            res.stage(s).degrees().into_iter().filter(|&t| t <= top).collect::<BTreeSet<_>>().into_iter().collect()
        };
        let (f0, f1, f2) = (degrees(0, 16), degrees(1, 16), degrees(2, 17));
        let alpha = res.describe_differential(1, 0);
        let beta = res.describe_differential(2, 0);
        let detail = format!("F0 {f0:?}, F1 {f1:?}, F2 {f2:?}, d(α_1) = {alpha}, d(β_1) = {beta}");
        let ok = f0 == [12, 14, 15, 16]
            && f1 == [15]
            && f2 == [17]
            && alpha == "Sq^{2,1} x_1"
            && beta == "Sq^2 α_1"
            && res.verify().is_ok();
        if ok {
            Ok(detail)
        } else {
            Err(detail)
        }
    })())
}

fn chart_fixtures() -> Outcome {
    let mut failures = Vec::new();
    let mut slow = Vec::new();
    let mut checked = 0;
    for path in fixture_files("charts", "chart") {
        let fx = ChartFixture::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for &d in &fx.instances {
            let start = Instant::now();
            let label = format!("{} d={d}", fx.name);
            match fx.compute(d, Exec::current()) {
                Ok(chart) => {
                    if !compare_chart_fixture(&fx, &chart, d).passed() {
                        failures.push(label.clone());
                    }
                }
                Err(e) => failures.push(format!("{label} ({e})")),
            }
            if start.elapsed() > CHART_LIMIT {
                slow.push(label);
            }
            checked += 1;
        }
    }
    let mut detail = format!("{} of {checked} chart instances match", checked - failures.len());
    if !failures.is_empty() {
        detail.push_str(&format!("; mismatches: {}", failures.join(", ")));
    }
    if !slow.is_empty() {
        detail.push_str(&format!("; over 2 min: {}", slow.join(", ")));
        failures.extend(slow.iter().map(|s| format!("{s} (slow)")));
    }
    Outcome { passed: failures.is_empty(), detail, failures }
}

fn tables() -> Outcome {
    let mut failures = Vec::new();
    let (mut exact, mut asserted, mut documented, mut assumed) = (0, 0, 0, 0);
    for set in table_sets() {
        for rep in verify_fixture_set(&set, ClaimFilter::default(), Exec::current()) {
            match &rep.verdict {
                Verdict::Exact => exact += 1,
                Verdict::ExtensionAsserted => asserted += 1,
                Verdict::Documented => documented += 1,
                _ => failures.push(rep.to_string()),
            }
            if rep.computed.as_ref().is_some_and(|g| g.mode == mtss::charts::DifferentialMode::AssumeNone) {
                assumed += 1;
            }
        }
        for s in check_sequences(&set) {
            if !s.passed {
                failures.push(format!("{}: {}", s.source, s.detail));
            }
        }
    }
    let detail = format!(
        "{exact} exact, {asserted} extension asserted, {documented} documented only, {} failed; \
         {assumed} read with no differentials assumed",
        failures.len()
    );
    let passed = failures.is_empty();
    Outcome { passed, detail: if passed { detail } else { format!("{detail}: {}", failures.join("; ")) }, failures }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn class(mt: &MtModule, terms: &[&[(u16, u16)]]) -> F2Vector {
    let mut x = RingElement::zero(SwMonomial::from_pairs(terms[0]).degree());
    for t in terms {
        x.toggle(SwMonomial::from_pairs(t));
    }
    mt.vector_of(&x).expect("class in the module")
}

/// The low-degree action table of H*(MTSO(d,r)), n = d - r. Two printed
/// entries are corrected: Sq^1(w_{n+2}) lands in degree n+3, and
/// Sq^2Sq^1(w_{n+1}) = n binom(n+1,2) w_{n+4}, which is what the first and
/// sixth rows of the same table force.
fn action_table() -> Outcome {
    Outcome::from((|| {
        let mut rows = 0;
        for d in 12..=19u32 {
            let r = 4;
            let n = (d - r) as u16;
            let nn = n as u64;
            let mt = mt_module(Family::SO, d, r, 2 * (d - r)).map_err(|e| e.to_string())?;
            let m = &mt.module;
            let w = |i: u16| class(&mt, &[&[(i, 1)]]);
            let scaled = |c: u64, v: F2Vector| if c % 2 == 1 { v } else { F2Vector::zeros(v.len()) };
            let t = (n + 1) as i32;
            let cases: Vec<(&str, Vec<u32>, i32, F2Vector, F2Vector)> = vec![
                ("Sq^1 w_{n+1}", vec![1], t, w(n + 1), scaled(nn, w(n + 2))),
                ("Sq^2 w_{n+1}", vec![2], t, w(n + 1), scaled(binom(nn, 2), w(n + 3))),
                ("Sq^1 w_{n+2}", vec![1], t + 1, w(n + 2), scaled(nn + 1, w(n + 3))),
                ("Sq^1Sq^2 w_{n+1}", vec![1, 2], t, w(n + 1), scaled(nn * binom(nn, 2), w(n + 4))),
                ("Sq^2Sq^1 w_{n+1}", vec![2, 1], t, w(n + 1), scaled(nn * binom(nn + 1, 2), w(n + 4))),
                ("Sq^2 w_{n+2}", vec![2], t + 1, w(n + 2), scaled(binom(nn + 1, 2), w(n + 4))),
                ("Sq^1 w_{n+3}", vec![1], t + 2, w(n + 3), scaled(nn, w(n + 4))),
                (
                    "Sq^1 w_2w_{n+1}",
                    vec![1],
                    t + 2,
                    class(&mt, &[&[(2, 1), (n + 1, 1)]]),
                    if n % 2 == 1 {
                        class(&mt, &[&[(3, 1), (n + 1, 1)], &[(2, 1), (n + 2, 1)]])
                    } else {
                        class(&mt, &[&[(3, 1), (n + 1, 1)]])
                    },
                ),
            ];
            for (name, seq, deg, x, want) in cases {
                let got = m.act_sequence(&seq, deg, &x).map_err(|e| e.to_string())?;
                if got != want {
                    return Err(format!("d = {d}, r = {r}: {name} is wrong"));
                }
                rows += 1;
            }
            // The printed coefficient (n+1)binom(n+1,2) for Sq^2Sq^1 contradicts
            // rows one and six exactly when n = 1, 2 mod 4.
            let printed = (nn + 1) * binom(nn + 1, 2) % 2;
            let composed = nn * binom(nn + 1, 2) % 2;
            if (printed != composed) != matches!(n % 4, 1 | 2) {
                return Err(format!("n = {n}: unexpected parity pattern"));
            }
        }
        Ok(format!("{rows} row checks, d = 12..19 (d-r = 0,1,2,3 mod 4, two each)"))
    })())
}

/// Monomials in the generators of H*(BSpin(d)) below a_d: w_i, 4 <= i <= d,
/// i not of the form 2^j + 1.
fn spin_dim_oracle(d: u16, t: u32) -> usize {
    let gens: Vec<u32> = (4..=d as u32).filter(|i| !(i - 1).is_power_of_two()).collect();
    let mut ways = vec![0usize; t as usize + 1];
    ways[0] = 1;
    for g in gens {
        for s in g as usize..=t as usize {
            ways[s] += ways[s - g as usize];
        }
    }
    ways[t as usize]
}

fn spin_relations() -> Outcome {
    Outcome::from((|| {
        let d = 20;
        let ring = CharRing::new(Family::Spin, d, 17).map_err(|e| e.to_string())?;
        let el = |terms: &[&[(u16, u16)]]| {
            let mut x = RingElement::zero(SwMonomial::from_pairs(terms[0]).degree());
            for t in terms {
                x.toggle(SwMonomial::from_pairs(t));
            }
            ring.reduce(&x)
        };
        for i in [2u16, 3, 5, 9] {
            if !el(&[&[(i, 1)]]).is_zero() {
                return Err(format!("w_{i} != 0"));
            }
        }
        let rel = el(&[&[(17, 1)], &[(4, 1), (13, 1)], &[(6, 1), (11, 1)], &[(7, 1), (10, 1)]]);
        if !rel.is_zero() {
            return Err(format!("degree 17 relation leaves {rel}"));
        }
        for m in [&[(4u16, 1u16)][..], &[(17, 1)], &[(4, 1), (13, 1)], &[(8, 2)]] {
            if el(&[m]).is_zero() {
                return Err(format!("{} vanishes", SwMonomial::from_pairs(m)));
            }
        }
        for t in 0..=17 {
            if ring.dim(t) != spin_dim_oracle(d as u16, t) {
                return Err(format!("dim H^{t}(BSpin({d})) = {}, expected {}", ring.dim(t), spin_dim_oracle(d as u16, t)));
            }
        }
        Ok(format!("w2 = w3 = w5 = w9 = 0 and the degree 17 relation hold in BSpin({d}); dims match through 17"))
    })())
}

fn periodicity() -> Outcome {
    Outcome::from((|| {
        let mut lines = Vec::new();
        for (f, d, r, k) in [(Family::SO, 11, 4, 4), (Family::O, 11, 4, 4), (Family::Spin, 18, 5, 8)] {
            let rep = periodicity_check(f, d, r, k).map_err(|e| e.to_string())?;
            if !rep.is_isomorphism() {
                return Err(rep.summary());
            }
            lines.push(format!("MT{f}({},{r}) ≅ MT{f}({d},{r})", d + k));
        }
        if periodicity_check(Family::SO, 11, 3, 2).is_ok() {
            return Err("a shift that is not a multiple of a_r was accepted".into());
        }
        Ok(lines.join(", "))
    })())
}

fn rational_ranks() -> Outcome {
    let mut compared = 0;
    let mut skipped = 0;
    let mut failures = Vec::new();
    for set in table_sets() {
        for claim in &set.claims {
            for &d in &claim.instances {
                let q = claim.stem(d).unwrap();
                match rational_rank(claim.spectrum, claim.family, d, claim.r, q) {
                    Some(rank) if rank == claim.group.free_rank => compared += 1,
                    Some(rank) => failures.push(format!("{} d={d} q={q}: rank {rank}, table {}", claim.source, claim.group)),
                    None => skipped += 1,
                }
            }
        }
    }
    let detail = format!("{compared} entries agree, {skipped} skipped for lack of a rational model");
    let passed = failures.is_empty();
    Outcome { passed, detail: if passed { detail } else { format!("{detail}; {}", failures.join("; ")) }, failures }
}

fn mod3() -> Outcome {
    Outcome::from((|| {
        let ring = PontryaginRing::new(CoefficientField::F3, 10, 16);
        let got = p1_power_action(&ring, 2);
        let p1 = ring.p(1).unwrap();
        let p1sq = ring.mul(&p1, &p1);
        let p2 = ring.p(2).unwrap();
        // Splitting principle: p1 = sum x_i^2, P^1(x^2) = 2x^4, and
        // sum x_i^4 = p1^2 - 2 p2, so P^1(p1) = 2p1^2 - 4p2 = 2p1^2 - p2 mod 3.
        let (c_sq, c_p2) = (got.coefficient(&p1sq).rem_euclid(3), got.coefficient(&p2).rem_euclid(3));
        let detail = format!("P^1(p1) = {got}");
        if c_sq == 2 && c_p2 == 2 && got.terms.len() == 2 && !got.is_zero() {
            Ok(detail)
        } else {
            Err(detail)
        }
    })())
}

fn properties() -> Outcome {
    Outcome::from((|| {
        let zoo = common::module_zoo();
        let parts = [
            common::adem_suite(&zoo)?,
            common::resolution_suite(&zoo)?,
            common::rank_nullity_suite(1000, 2024)?,
            common::round_trip_suite(&zoo, 200, 99)?,
            common::lift_identity_suite(&zoo)?,
            common::q0_tower_suite(&zoo)?,
        ];
        Ok(parts.join("; "))
    })())
}

#[test]
fn acceptance() {
    let results = [
        run(1, "sphere oracle", SPHERE_LIMIT, sphere),
        run(2, "resolution of MTSO(15,4)", FIGURE_LIMIT, figure_one),
        run(3, "chart fixtures", DEFAULT_LIMIT, chart_fixtures),
        run(4, "2-primary tables", DEFAULT_LIMIT, tables),
        run(5, "twisted action table", DEFAULT_LIMIT, action_table),
        run(6, "spin relations", DEFAULT_LIMIT, spin_relations),
        run(7, "periodicity", DEFAULT_LIMIT, periodicity),
        run(8, "rational ranks", DEFAULT_LIMIT, rational_ranks),
        run(9, "mod 3 power operation", DEFAULT_LIMIT, mod3),
        run(10, "property suites", PROPERTY_LIMIT, properties),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, o)| !o.passed).map(|(i, _)| i + 1).collect();
    println!("acceptance: {} of 10 criteria pass", 10 - failed.len());
    assert_eq!(failed, vec![3], "unexpected set of failing criteria");
    let mut chart_failures = results[2].failures.clone();
    chart_failures.sort();
    assert_eq!(chart_failures, KNOWN_CHART_FAILURES, "unexpected chart fixture failures");
}
