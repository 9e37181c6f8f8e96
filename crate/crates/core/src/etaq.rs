//! q-Pochhammer products `f_m = (q^m; q^m)_∞`, eta-quotients and the
//! overpartition generating functions built from them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{QSeries, Ring, MAX_MODULAR_ORDER};

/// Exponent map `m -> e_m` describing `∏ f_m^{e_m}`.
pub type Factors = BTreeMap<u64, i64>;

/// Builds a [`Factors`] map, summing repeated indices and dropping zero exponents.
pub fn factors(pairs: &[(u64, i64)]) -> Factors {
    let mut out = Factors::new();
    for &(m, e) in pairs {
        *out.entry(m).or_insert(0) += e;
    }
    out.retain(|_, e| *e != 0);
    out
}

fn pentagonal_table() -> &'static [(usize, i64)] {
    static TABLE: OnceLock<Vec<(usize, i64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = vec![(0usize, 1i64)];
        for k in 1i64.. {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let a = (k * (3 * k - 1) / 2) as usize;
            let b = (k * (3 * k + 1) / 2) as usize;
            if a > MAX_MODULAR_ORDER {
                break;
            }
            out.push((a, sign));
            if b <= MAX_MODULAR_ORDER {
                out.push((b, sign));
            }
        }
        out
    })
}

/// Nonzero terms `(exponent, ±1)` of `f_1` up to `q^order`, ascending.
///
/// ```
/// let t = biregular::etaq::pentagonal_terms(7);
/// assert_eq!(t, vec![(0, 1), (1, -1), (2, -1), (5, 1), (7, 1)]);
/// ```
pub fn pentagonal_terms(order: usize) -> Vec<(usize, i64)> {
    pentagonal_table().iter().copied().take_while(|&(e, _)| e <= order).collect()
}

fn scaled_terms(m: u64, order: usize) -> Vec<(usize, i64)> {
    let m = m as usize;
    pentagonal_terms(order / m).into_iter().map(|(e, s)| (e * m, s)).collect()
}

fn check_index(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Precondition("Pochhammer index must be at least 1".into()));
    }
    Ok(())
}

/// `f_m` truncated at `order`, from the pentagonal number theorem.
pub fn pochhammer(m: u64, order: usize, ring: Ring) -> Result<QSeries> {
    check_index(m)?;
    ring.check_order(order)?;
    let mut c = vec![BigInt::from(0); order + 1];
    for (e, s) in scaled_terms(m, order) {
        c[e] = BigInt::from(s);
    }
    QSeries::new(c, ring)
}

/// `f_m` as the finite product `∏_{mn ≤ order} (1 - q^{mn})`.
pub fn pochhammer_direct(m: u64, order: usize, ring: Ring) -> Result<QSeries> {
    check_index(m)?;
    ring.check_order(order)?;
    let mut acc = QSeries::one(order, ring);
    let step = m as usize;
    for e in (step..=order).step_by(step) {
        acc = acc.mul_sparse(&[(0, 1), (e, -1)]);
    }
    Ok(acc)
}

/// `∏ f_m^{e_m}` by repeated sparse multiplication and division.
pub fn expand_product(fac: &Factors, order: usize, ring: Ring) -> Result<QSeries> {
    ring.check_order(order)?;
    let mut acc = QSeries::one(order, ring);
    for (&m, &e) in fac {
        check_index(m)?;
        let terms = scaled_terms(m, order);
        for _ in 0..e.unsigned_abs() {
            acc = if e > 0 { acc.mul_sparse(&terms) } else { acc.div_sparse(&terms)? };
        }
    }
    Ok(acc)
}

/// `∏ f_m^{e_m}` through dense `pow` and `invert`; slower, kept as a cross-check.
pub fn expand_product_via_pow(fac: &Factors, order: usize, ring: Ring) -> Result<QSeries> {
    ring.check_order(order)?;
    let mut acc = QSeries::one(order, ring);
    for (&m, &e) in fac {
        let f = pochhammer(m, order, ring)?;
        let base = if e < 0 { f.invert()? } else { f };
        acc = acc.mul(&base.pow(e.abs())?)?;
    }
    Ok(acc)
}

/// Result of [`expand_monomial`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub series: QSeries,
    /// Set when the leading power `q^s` lies past the truncation.
    pub vanished: bool,
}

/// `c · q^s · ∏ f_m^{e_m}` truncated at `order`.
pub fn expand_monomial(c: impl Into<BigInt>, s: usize, fac: &Factors, order: usize, ring: Ring) -> Result<Expansion> {
    ring.check_order(order)?;
    if s > order {
        return Ok(Expansion { series: QSeries::zero(order, ring), vanished: true });
    }
    let body = expand_product(fac, order - s, ring)?.scale(c);
    Ok(Expansion { series: body.shift(s as i64)?, vanished: false })
}

/// A coprime pair `(ℓ1, ℓ2)`, both greater than 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(u64, u64)", into = "(u64, u64)")]
pub struct BiregularSpec {
    l1: u64,
    l2: u64,
}

impl BiregularSpec {
    pub fn new(l1: u64, l2: u64) -> Result<Self> {
        if l1 < 2 || l2 < 2 {
            return Err(Error::InvalidSpec { l1, l2, reason: "both entries must exceed 1" });
        }
        if l1.gcd(&l2) != 1 {
            return Err(Error::InvalidSpec { l1, l2, reason: "entries must be coprime" });
        }
        Ok(BiregularSpec { l1, l2 })
    }

    pub fn l1(&self) -> u64 {
        self.l1
    }

    pub fn l2(&self) -> u64 {
        self.l2
    }

    /// Whether `n` may appear as a part.
    pub fn allows(&self, n: u64) -> bool {
        n % self.l1 != 0 && n % self.l2 != 0
    }

    /// Short name such as `B_{2,9}`.
    pub fn label(&self) -> String {
        format!("B_{{{},{}}}", self.l1, self.l2)
    }
}

impl TryFrom<(u64, u64)> for BiregularSpec {
    type Error = Error;
    fn try_from((l1, l2): (u64, u64)) -> Result<Self> {
        BiregularSpec::new(l1, l2)
    }
}

impl From<BiregularSpec> for (u64, u64) {
    fn from(s: BiregularSpec) -> Self {
        (s.l1, s.l2)
    }
}

impl fmt::Display for BiregularSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.l1, self.l2)
    }
}

impl FromStr for BiregularSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("expected a pair like `2,9`, got `{s}`"));
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        BiregularSpec::new(a, b)
    }
}

/// `f2 fℓ1² fℓ2² f_{2ℓ1ℓ2} / (f1² f_{2ℓ1} f_{2ℓ2} f_{ℓ1ℓ2}²)`.
pub fn biregular_factors(spec: BiregularSpec) -> Factors {
    let (a, b) = (spec.l1, spec.l2);
    factors(&[(2, 1), (a, 2), (b, 2), (2 * a * b, 1), (1, -2), (2 * a, -1), (2 * b, -1), (a * b, -2)])
}

/// Generating function of biregular overpartitions for `spec`.
pub fn biregular_gf(spec: BiregularSpec, order: usize, ring: Ring) -> Result<QSeries> {
    expand_product(&biregular_factors(spec), order, ring)
}

/// `f2 / f1²`, the overpartition generating function.
pub fn overpartition_gf(order: usize, ring: Ring) -> Result<QSeries> {
    expand_product(&factors(&[(2, 1), (1, -2)]), order, ring)
}

/// `f2 fℓ² / (f1² f_{2ℓ})`, overpartitions with no part divisible by `ℓ`.
pub fn regular_overpartition_gf(l: u64, order: usize, ring: Ring) -> Result<QSeries> {
    if l < 2 {
        return Err(Error::Precondition(format!("regularity index must be at least 2, got {l}")));
    }
    expand_product(&factors(&[(2, 1), (l, 2), (1, -2), (2 * l, -1)]), order, ring)
}

/// `∏ η(δz)^{r_δ}` with an optional level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotient {
    terms: BTreeMap<u64, i64>,
    level: Option<u64>,
}

impl EtaQuotient {
    pub fn new(terms: BTreeMap<u64, i64>, level: Option<u64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidEtaQuotient("no factors".into()));
        }
        if let Some((d, r)) = terms.iter().find(|(&d, &r)| d == 0 || r == 0) {
            return Err(Error::InvalidEtaQuotient(format!("bad factor {d}:{r}")));
        }
        if let Some(n) = level {
            if n == 0 {
                return Err(Error::InvalidEtaQuotient("level must be positive".into()));
            }
            if let Some(d) = terms.keys().find(|&&d| n % d != 0) {
                return Err(Error::InvalidEtaQuotient(format!("{d} does not divide the level {n}")));
            }
        }
        Ok(EtaQuotient { terms, level })
    }

    pub fn with_level(&self, level: u64) -> Result<Self> {
        EtaQuotient::new(self.terms.clone(), Some(level))
    }

    pub fn terms(&self) -> &BTreeMap<u64, i64> {
        &self.terms
    }

    pub fn level(&self) -> Option<u64> {
        self.level
    }

    /// `Σ δ r_δ`.
    pub fn delta_sum(&self) -> i64 {
        self.terms.iter().map(|(&d, &r)| d as i64 * r).sum()
    }

    /// `Σ r_δ`, twice the weight.
    pub fn exponent_sum(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(d, r)| format!("{d}:{r}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for EtaQuotient {
    type Err = Error;
    /// Parses `"6:4"` or `"4:1,20:1"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::InvalidEtaQuotient(format!("cannot parse `{item}`, expected delta:exponent"));
            let (d, r) = item.split_once(':').ok_or_else(bad)?;
            let d: u64 = d.trim().parse().map_err(|_| bad())?;
            let r: i64 = r.trim().parse().map_err(|_| bad())?;
            *terms.entry(d).or_insert(0) += r;
        }
        terms.retain(|_, r| *r != 0);
        EtaQuotient::new(terms, None)
    }
}

/// q-expansion of an eta-quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaExpansion {
    /// `q^{q_power} ∏ f_δ^{r_δ}`, truncated.
    pub series: QSeries,
    pub q_power: i64,
}

/// Expands `∏ η(δz)^{r_δ} = q^{Σδr_δ/24} ∏ f_δ^{r_δ}` to `order`.
pub fn materialize_eta(eq: &EtaQuotient, order: usize, ring: Ring) -> Result<EtaExpansion> {
    let sum = eq.delta_sum();
    if sum.rem_euclid(24) != 0 {
        return Err(Error::FractionalEtaShift { residue: sum.rem_euclid(24) });
    }
    let q_power = sum / 24;
    if q_power < 0 {
        return Err(Error::InvalidEtaQuotient(format!("leading power q^{q_power} is negative")));
    }
    let fac: Factors = eq.terms.clone();
    let series = expand_monomial(1, q_power as usize, &fac, order, ring)?.series;
    Ok(EtaExpansion { series, q_power })
}
