//! Kronecker symbols, prime utilities and eta-quotient modularity data.

use num_integer::Integer;
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::etaq::EtaQuotient;

/// Kronecker symbol `(a/n)`, defined for all integers.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a.abs() == 1 { 1 } else { 0 };
    }
    let mut s: i8 = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            s = -s;
        }
    }
    let v = n.trailing_zeros();
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= v;
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            s = -s;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                s = -s;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        a %= n;
    }
    if n == 1 {
        s
    } else {
        0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as ascending `(p, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Index of `Γ0(N)` in `SL2(Z)`: `N ∏_{p | N} (1 + 1/p)`.
pub fn gamma0_index(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    Ok(factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p + 1)))
}

/// First `count` primes congruent to `r` modulo `m`, ascending.
pub fn primes_in_class(r: u64, m: u64, count: usize) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let r = r % m;
    let g = r.gcd(&m);
    if g != 1 {
        let only: Vec<u64> = if is_prime(g) && g % m == r { vec![g] } else { vec![] };
        if count > only.len() {
            return Err(Error::Precondition(format!(
                "the class {r} mod {m} contains {} prime(s), {count} requested",
                only.len()
            )));
        }
        return Ok(only.into_iter().take(count).collect());
    }
    Ok((0..).map(|i| r + i * m).filter(|&c| is_prime(c)).take(count).collect())
}

/// Dirichlet character `d ↦ ((-1)^k s / d)` with `s = ∏ δ^{r_δ}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub negative: bool,
    /// `(δ, r_δ)` pairs; only the parity of each exponent matters.
    pub factors: Vec<(u64, i64)>,
}

impl Character {
    pub fn eval(&self, d: i64) -> i8 {
        let mut v = if self.negative { kronecker(-1, d) } else { 1 };
        for &(delta, r) in &self.factors {
            if r % 2 != 0 {
                v *= kronecker(delta as i64, d);
            } else if kronecker(delta as i64, d) == 0 {
                v = 0;
            }
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cusp {
    pub c: i64,
    pub d: u64,
}

impl Cusp {
    pub fn new(c: i64, d: u64) -> Result<Self> {
        if d == 0 || c.unsigned_abs().gcd(&d) != 1 {
            return Err(Error::Precondition(format!("{c}/{d} is not a reduced cusp")));
        }
        Ok(Cusp { c, d })
    }
}

/// Modularity conditions and cusp data for an eta-quotient at a level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularityReport {
    pub level: u64,
    pub weight: Rational64,
    pub weight_integral: bool,
    pub delta_sum: i64,
    pub codelta_sum: i64,
    pub cond_delta: bool,
    pub cond_codelta: bool,
    /// `s = ∏ δ^{r_δ}` as prime-power pairs.
    pub character_s: Vec<(u64, i64)>,
    pub cusp_orders: Vec<(Cusp, Rational64)>,
}

impl ModularityReport {
    pub fn conditions_hold(&self) -> bool {
        self.weight_integral && self.cond_delta && self.cond_codelta
    }

    /// The character, available when the weight is integral.
    pub fn character(&self, eq: &EtaQuotient) -> Option<Character> {
        let k = self.weight.to_integer();
        self.weight_integral.then(|| Character {
            negative: k % 2 != 0,
            factors: eq.terms().iter().map(|(&d, &r)| (d, r)).collect(),
        })
    }
}

fn check_divides(eq: &EtaQuotient, level: u64) -> Result<()> {
    if level == 0 {
        return Err(Error::Precondition("level must be positive".into()));
    }
    match eq.terms().keys().find(|&&d| level % d != 0) {
        Some(d) => Err(Error::Precondition(format!("{d} does not divide the level {level}"))),
        None => Ok(()),
    }
}

/// Order of vanishing of `eq` at the cusp `c/d` for `Γ0(level)`.
///
/// `(N/24) Σ_δ gcd(d,δ)² r_δ / (gcd(d, N/d) d δ)`; independent of `c`.
pub fn cusp_order(eq: &EtaQuotient, level: u64, cusp: Cusp) -> Result<Rational64> {
    check_divides(eq, level)?;
    let d = cusp.d;
    if level % d != 0 {
        return Err(Error::Precondition(format!("cusp denominator {d} does not divide {level}")));
    }
    let outer = d.gcd(&(level / d)) * d;
    let sum = eq.terms().iter().fold(Rational64::from_integer(0), |acc, (&delta, &r)| {
        let g = d.gcd(&delta) as i64;
        acc + Rational64::new(g * g * r, (outer * delta) as i64)
    });
    Ok(sum * Rational64::new(level as i64, 24))
}

/// Weight, the two divisibility conditions, character data and every cusp order.
pub fn modularity_check(eq: &EtaQuotient, level: u64) -> Result<ModularityReport> {
    check_divides(eq, level)?;
    let delta_sum = eq.delta_sum();
    let codelta_sum: i64 = eq.terms().iter().map(|(&d, &r)| (level / d) as i64 * r).sum();
    let weight = Rational64::new(eq.exponent_sum(), 2);
    let mut s: std::collections::BTreeMap<u64, i64> = Default::default();
    for (&d, &r) in eq.terms() {
        for (p, e) in factorize(d) {
            *s.entry(p).or_insert(0) += e as i64 * r;
        }
    }
    s.retain(|_, e| *e != 0);
    let cusp_orders = divisors(level)
        .into_iter()
        .map(|d| {
            let cusp = Cusp { c: 1, d };
            cusp_order(eq, level, cusp).map(|o| (cusp, o))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModularityReport {
        level,
        weight,
        weight_integral: weight.is_integer(),
        delta_sum,
        codelta_sum,
        cond_delta: delta_sum % 24 == 0,
        cond_codelta: codelta_sum % 24 == 0,
        character_s: s.into_iter().collect(),
        cusp_orders,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Holomorphy {
    pub holomorphic: bool,
    /// Every cusp order is strictly positive.
    pub cuspidal: bool,
    pub offending: Vec<Cusp>,
}

/// Checks holomorphy at one cusp per divisor of the level.
pub fn is_holomorphic(eq: &EtaQuotient, level: u64) -> Result<Holomorphy> {
    let report = modularity_check(eq, level)?;
    if !report.conditions_hold() {
        return Err(Error::Precondition(format!("{eq} fails the modularity conditions at level {level}")));
    }
    let offending: Vec<Cusp> = report.cusp_orders.iter().filter(|(_, o)| *o < 0.into()).map(|(c, _)| *c).collect();
    Ok(Holomorphy {
        holomorphic: offending.is_empty(),
        cuspidal: report.cusp_orders.iter().all(|(_, o)| *o > 0.into()),
        offending,
    })
}

/// `Σ_{d | N} φ(gcd(d, N/d)) · ord(1/d)`, which equals `k · index / 12`
/// for a holomorphic eta-quotient.
pub fn total_cusp_vanishing(eq: &EtaQuotient, level: u64) -> Result<Rational64> {
    let report = modularity_check(eq, level)?;
    Ok(report.cusp_orders.iter().fold(Rational64::from_integer(0), |acc, (c, o)| {
        acc + o * euler_phi(c.d.gcd(&(level / c.d))) as i64
    }))
}
