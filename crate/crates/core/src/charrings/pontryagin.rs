//! Pontryagin class rings over Q and F_3, used only for dimension counts
//! and the first reduced power on Pontryagin classes.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientField {
    Q,
    F3,
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientField::Q => "Q",
            CoefficientField::F3 => "F3",
        })
    }
}

/// `p_1^{a_1} ... p_m^{a_m} e^{eps}`; `euler` is only used when `d` is even.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PontryaginMonomial {
    pub p: Vec<u32>,
    pub euler: bool,
}

impl PontryaginMonomial {
    pub fn one(m: usize) -> Self {
        PontryaginMonomial { p: vec![0; m], euler: false }
    }

    pub fn degree(&self, d: u32) -> u32 {
        let p: u32 = self.p.iter().enumerate().map(|(i, &a)| 4 * (i as u32 + 1) * a).sum();
        p + if self.euler { d } else { 0 }
    }
}

impl fmt::Display for PontryaginMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, &a) in self.p.iter().enumerate() {
            if a == 0 {
                continue;
            }
            any = true;
            if a == 1 {
                write!(f, "p{}", i + 1)?;
            } else {
                write!(f, "p{}^{}", i + 1, a)?;
            }
        }
        if self.euler {
            any = true;
            f.write_str("e")?;
        }
        if !any {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Element with integer coefficients, reduced mod 3 over F_3.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PontryaginElement {
    pub field: CoefficientField,
    pub terms: BTreeMap<PontryaginMonomial, i64>,
}

impl PontryaginElement {
    pub fn zero(field: CoefficientField) -> Self {
        PontryaginElement { field, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, m: PontryaginMonomial, c: i64) {
        let e = self.terms.entry(m.clone()).or_insert(0);
        *e += c;
        if self.field == CoefficientField::F3 {
            *e = e.rem_euclid(3);
        }
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &PontryaginMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }
}

impl fmt::Display for PontryaginElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if *c == 1 { m.to_string() } else { format!("{c}{m}") })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `H^*(BSO(d); F)` for `F = Q` or `F_3`: polynomial on `p_1, ..., p_{[d/2]}`,
/// with an Euler class `e` of degree `d` and `e^2 = p_{d/2}` when `d` is even.
#[derive(Clone, Debug)]
pub struct PontryaginRing {
    pub field: CoefficientField,
    pub d: u32,
    pub t_max: u32,
    basis: Vec<Vec<PontryaginMonomial>>,
}

impl PontryaginRing {
    pub fn new(field: CoefficientField, d: u32, t_max: u32) -> Self {
        let m = (d / 2) as usize;
        let mut basis = vec![Vec::new(); t_max as usize + 1];
        let mut cur = PontryaginMonomial::one(m);
        fn rec(i: usize, deg: u32, cur: &mut PontryaginMonomial, d: u32, t_max: u32, out: &mut Vec<Vec<PontryaginMonomial>>) {
            if i == cur.p.len() {
                out[deg as usize].push(cur.clone());
                if d % 2 == 0 && d > 0 && deg + d <= t_max {
                    let mut e = cur.clone();
                    e.euler = true;
                    out[(deg + d) as usize].push(e);
                }
                return;
            }
            let step = 4 * (i as u32 + 1);
            let mut a = 0;
            while deg + a * step <= t_max {
                cur.p[i] = a;
                rec(i + 1, deg + a * step, cur, d, t_max, out);
                a += 1;
            }
            cur.p[i] = 0;
        }
        rec(0, 0, &mut cur, d, t_max, &mut basis);
        for b in basis.iter_mut() {
            b.sort();
        }
        PontryaginRing { field, d, t_max, basis }
    }

    pub fn rank(&self) -> usize {
        (self.d / 2) as usize
    }

    pub fn dim(&self, t: u32) -> usize {
        self.basis.get(t as usize).map_or(0, |b| b.len())
    }

    pub fn basis(&self, t: u32) -> &[PontryaginMonomial] {
        &self.basis[t as usize]
    }

    /// `p_j` as a monomial (zero above `[d/2]`).
    pub fn p(&self, j: usize) -> Option<PontryaginMonomial> {
        if j == 0 || j > self.rank() {
            return None;
        }
        let mut m = PontryaginMonomial::one(self.rank());
        m.p[j - 1] = 1;
        Some(m)
    }

    /// Product of monomials, applying `e^2 = p_{d/2}`.
    pub fn mul(&self, a: &PontryaginMonomial, b: &PontryaginMonomial) -> PontryaginMonomial {
        let mut p: Vec<u32> = a.p.iter().zip(&b.p).map(|(x, y)| x + y).collect();
        let euler = a.euler ^ b.euler;
        if a.euler && b.euler {
            let top = self.rank();
            p[top - 1] += 1;
        }
        PontryaginMonomial { p, euler }
    }
}

/// `P^1(p_{j-1}) = 2 p_1 p_{j-1} - 2 j p_j`, reduced in the ring's field.
pub fn p1_power_action(ring: &PontryaginRing, j: usize) -> PontryaginElement {
    assert!(j >= 2 && j - 1 <= ring.rank(), "P^1(p_{{j-1}}) needs 2 <= j <= [d/2] + 1");
    let mut out = PontryaginElement::zero(ring.field);
    let p1 = ring.p(1).expect("p_1 exists");
    let pj1 = ring.p(j - 1).expect("p_{j-1} exists");
    out.add_term(ring.mul(&p1, &pj1), 2);
    if let Some(pj) = ring.p(j) {
        out.add_term(pj, -2 * j as i64);
    }
    out
}
