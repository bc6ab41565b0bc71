//! Finitely generated abelian groups written as `Z + Z/48 + Z/4`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer};

/// `Z^free_rank` plus cyclic groups, kept in primary decomposition:
/// every order is a prime power, sorted by prime then descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupExpr {
    pub free_rank: usize,
    orders: Vec<u64>,
}

fn prime_power_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn smallest_prime(n: u64) -> u64 {
    prime_power_factors(n).first().map_or(n, |q| {
        let mut p = 2;
        while q % p != 0 {
            p += 1;
        }
        p
    })
}

impl AbelianGroupExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from a free rank and arbitrary cyclic orders (1 is dropped).
    pub fn new(free_rank: usize, cyclic: &[u64]) -> Self {
        let mut orders: Vec<u64> = cyclic.iter().flat_map(|&n| prime_power_factors(n)).collect();
        orders.sort_by(|a, b| smallest_prime(*a).cmp(&smallest_prime(*b)).then(b.cmp(a)));
        AbelianGroupExpr { free_rank, orders }
    }

    /// Prime-power orders of the torsion summands.
    pub fn primary_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.orders.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn torsion_order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// The `p`-primary part, keeping the free rank.
    pub fn p_part(&self, p: u64) -> AbelianGroupExpr {
        AbelianGroupExpr {
            free_rank: self.free_rank,
            orders: self.orders.iter().copied().filter(|&q| smallest_prime(q) == p).collect(),
        }
    }

    pub fn two_part(&self) -> AbelianGroupExpr {
        self.p_part(2)
    }

    /// Exponent of the torsion subgroup (1 if torsion free).
    pub fn exponent(&self) -> u64 {
        let mut primes: Vec<(u64, u64)> = Vec::new();
        for &q in &self.orders {
            let p = smallest_prime(q);
            match primes.iter_mut().find(|(pp, _)| *pp == p) {
                Some(e) => e.1 = e.1.max(q),
                None => primes.push((p, q)),
            }
        }
        primes.iter().map(|e| e.1).product()
    }

    pub fn summands(&self) -> usize {
        self.free_rank + self.orders.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse group `{src}`: {msg}")]
pub struct GroupParseError {
    pub src: String,
    pub msg: String,
}

impl FromStr for AbelianGroupExpr {
    type Err = GroupParseError;

    /// Accepts `0`, `Z`, `Z/n`, `Z^k`, `(Z/n)^k` joined by `+` or `⊕`.
    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| GroupParseError { src: src.to_string(), msg: msg.to_string() };
        let mut free = 0;
        let mut cyclic = Vec::new();
        for raw in src.split(['+', '⊕']) {
            let term: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if term.is_empty() {
                return Err(err("empty summand"));
            }
            let (base, power) = match term.rsplit_once('^') {
                Some((b, k)) => (b.to_string(), k.parse::<usize>().map_err(|_| err("bad exponent"))?),
                None => (term.clone(), 1),
            };
            let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(&base).to_string();
            if base == "0" {
                continue;
            }
            if base == "Z" {
                free += power;
            } else if let Some(n) = base.strip_prefix("Z/") {
                let n: u64 = n.parse().map_err(|_| err("bad cyclic order"))?;
                if n < 2 {
                    return Err(err("cyclic order must be at least 2"));
                }
                cyclic.extend(std::iter::repeat(n).take(power));
            } else {
                return Err(err("expected 0, Z or Z/n"));
            }
        }
        Ok(AbelianGroupExpr::new(free, &cyclic))
    }
}

impl<'de> Deserialize<'de> for AbelianGroupExpr {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for AbelianGroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = (0..self.free_rank).map(|_| "Z".to_string()).collect();
        parts.extend(self.orders.iter().map(|o| format!("Z/{o}")));
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> AbelianGroupExpr {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(g("Z/48 + Z + Z/4"), g("Z ⊕ Z/4 ⊕ Z/16 ⊕ Z/3"));
        assert_eq!(g("Z/48 + Z/4").to_string(), "Z/16 + Z/4 + Z/3");
        assert_eq!(g("(Z/2)^3"), g("Z/2 + Z/2 + Z/2"));
        assert_eq!(g("Z^2").free_rank, 2);
        assert_eq!(g("0"), AbelianGroupExpr::zero());
        assert_eq!(g("Z/240").two_part(), g("Z/16"));
        assert_eq!(g("Z + Z/24 + Z/2").two_part().to_string(), "Z + Z/8 + Z/2");
        assert_eq!(g("Z/48 + Z/4").exponent(), 48);
    }

    #[test]
    fn rejects_garbage() {
        assert!("Q".parse::<AbelianGroupExpr>().is_err());
        assert!("Z/1".parse::<AbelianGroupExpr>().is_err());
        assert!("Z +".parse::<AbelianGroupExpr>().is_err());
    }
}
