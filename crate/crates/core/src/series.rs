//! Truncated formal power series over ℤ or ℤ/mℤ.
//!
//! A [`QSeries`] stores the coefficients of `q^0 ..= q^N` together with the
//! ring they live in. `N` is the *order*: every coefficient up to and
//! including `q^N` is exact, nothing beyond it is known. Binary operations
//! keep the smaller order of their operands and refuse to mix rings.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order supported for exact (big integer) series.
pub const MAX_EXACT_ORDER: usize = 20_000;
/// Largest order supported for residue series.
pub const MAX_MODULAR_ORDER: usize = 1 << 17;
/// Largest modulus accepted by [`Ring::modulo`].
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// Coefficient ring of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    Exact,
    Mod(u64),
}

impl Ring {
    pub fn modulo(m: u64) -> Result<Ring> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidModulus { got: m, max: MAX_MODULUS });
        }
        Ok(Ring::Mod(m))
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::Exact => None,
            Ring::Mod(m) => Some(m),
        }
    }

    pub fn max_order(self) -> usize {
        match self {
            Ring::Exact => MAX_EXACT_ORDER,
            Ring::Mod(_) => MAX_MODULAR_ORDER,
        }
    }

    /// Fails when `order` lies outside the supported envelope for this ring.
    pub fn check_order(self, order: usize) -> Result<()> {
        if order > self.max_order() {
            return Err(Error::EnvelopeExceeded { requested: order, max: self.max_order(), ring: self });
        }
        Ok(())
    }

    /// Canonical representative of `v` in this ring.
    pub fn reduce(self, v: &BigInt) -> BigInt {
        match self {
            Ring::Exact => v.clone(),
            Ring::Mod(m) => v.mod_floor(&BigInt::from(m)),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Exact => write!(f, "Z"),
            Ring::Mod(m) => write!(f, "Z/{m}Z"),
        }
    }
}

pub(crate) fn residue(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits in u64")
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Coeffs {
    Exact(Vec<BigInt>),
    Mod { m: u64, r: Vec<u64> },
}

/// Coefficient arithmetic shared by the two storage kinds.
trait Arith {
    type C: Clone + PartialEq;
    fn zero(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn sub(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn from_big(&self, v: &BigInt) -> Self::C;
    fn unit_inverse(&self, c: &Self::C) -> Option<Self::C>;
}

struct ExactArith;

impl Arith for ExactArith {
    type C = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_big(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn unit_inverse(&self, c: &BigInt) -> Option<BigInt> {
        (c.abs().is_one()).then(|| c.clone())
    }
}

struct ModArith(u64);

impl Arith for ModArith {
    type C = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, c: &u64) -> bool {
        *c == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn from_big(&self, v: &BigInt) -> u64 {
        residue(v, self.0)
    }
    fn unit_inverse(&self, c: &u64) -> Option<u64> {
        let m = self.0 as i64;
        let g = (*c as i64).extended_gcd(&m);
        (g.gcd == 1).then(|| g.x.rem_euclid(m) as u64)
    }
}

fn support<A: Arith>(ar: &A, a: &[A::C]) -> Vec<usize> {
    a.iter().enumerate().filter(|(_, c)| !ar.is_zero(c)).map(|(i, _)| i).collect()
}

fn mul_vec<A: Arith>(ar: &A, a: &[A::C], b: &[A::C]) -> Vec<A::C> {
    let n = a.len().min(b.len());
    let (a, b) = if support(ar, &a[..n]).len() <= support(ar, &b[..n]).len() { (a, b) } else { (b, a) };
    let mut out = vec![ar.zero(); n];
    for i in support(ar, &a[..n]) {
        let ai = &a[i];
        for (j, bj) in b[..n - i].iter().enumerate() {
            if !ar.is_zero(bj) {
                out[i + j] = ar.add(&out[i + j], &ar.mul(ai, bj));
            }
        }
    }
    out
}

fn invert_vec<A: Arith>(ar: &A, a: &[A::C]) -> Option<Vec<A::C>> {
    let inv0 = ar.unit_inverse(&a[0])?;
    let nz: Vec<usize> = support(ar, a).into_iter().filter(|&k| k > 0).collect();
    let mut out = vec![ar.zero(); a.len()];
    out[0] = inv0.clone();
    for n in 1..a.len() {
        let mut acc = ar.zero();
        for &k in nz.iter().take_while(|&&k| k <= n) {
            acc = ar.add(&acc, &ar.mul(&a[k], &out[n - k]));
        }
        out[n] = ar.sub(&ar.zero(), &ar.mul(&inv0, &acc));
    }
    Some(out)
}

/// Outcome of a coefficientwise congruence test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub modulus: u64,
    pub checked_upto: usize,
    pub mismatch: Option<Mismatch>,
}

impl Congruence {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// First index where two series disagree, with both residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub index: usize,
    pub left: u64,
    pub right: u64,
}

/// A truncated power series `Σ_{n≤N} c_n q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Coeffs,
}

macro_rules! with_arith {
    ($self:expr, $ar:ident, $v:ident => $body:expr) => {
        match &$self.coeffs {
            Coeffs::Exact($v) => {
                let $ar = ExactArith;
                QSeries { coeffs: Coeffs::Exact($body) }
            }
            Coeffs::Mod { m, r: $v } => {
                let $ar = ModArith(*m);
                QSeries { coeffs: Coeffs::Mod { m: *m, r: $body } }
            }
        }
    };
}

macro_rules! with_arith2 {
    ($a:expr, $b:expr, $ar:ident, $x:ident, $y:ident => $body:expr) => {
        match (&$a.coeffs, &$b.coeffs) {
            (Coeffs::Exact($x), Coeffs::Exact($y)) => {
                let $ar = ExactArith;
                Ok(QSeries { coeffs: Coeffs::Exact($body) })
            }
            (Coeffs::Mod { m, r: $x }, Coeffs::Mod { m: m2, r: $y }) if m == m2 => {
                let $ar = ModArith(*m);
                Ok(QSeries { coeffs: Coeffs::Mod { m: *m, r: $body } })
            }
            _ => Err(Error::RingMismatch { left: $a.ring(), right: $b.ring() }),
        }
    };
}

impl QSeries {
    /// Builds a series of order `coeffs.len() - 1`, reducing into `ring`.
    pub fn new(coeffs: Vec<BigInt>, ring: Ring) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("a series needs at least one coefficient".into()));
        }
        ring.check_order(coeffs.len() - 1)?;
        let coeffs = match ring {
            Ring::Exact => Coeffs::Exact(coeffs),
            Ring::Mod(m) => Coeffs::Mod { m, r: coeffs.iter().map(|c| residue(c, m)).collect() },
        };
        Ok(QSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64], ring: Ring) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), ring)
    }

    pub fn zero(order: usize, ring: Ring) -> Self {
        match ring {
            Ring::Exact => QSeries { coeffs: Coeffs::Exact(vec![BigInt::zero(); order + 1]) },
            Ring::Mod(m) => QSeries { coeffs: Coeffs::Mod { m, r: vec![0; order + 1] } },
        }
    }

    pub fn one(order: usize, ring: Ring) -> Self {
        Self::monomial(1, 0, order, ring)
    }

    /// `c·q^s` truncated at `order` (the zero series when `s > order`).
    pub fn monomial(c: impl Into<BigInt>, s: usize, order: usize, ring: Ring) -> Self {
        let mut out = Self::zero(order, ring);
        if s <= order {
            out.set(s, &c.into());
        }
        out
    }

    fn set(&mut self, n: usize, v: &BigInt) {
        match &mut self.coeffs {
            Coeffs::Exact(c) => c[n] = v.clone(),
            Coeffs::Mod { m, r } => r[n] = residue(v, *m),
        }
    }

    pub fn ring(&self) -> Ring {
        match &self.coeffs {
            Coeffs::Exact(_) => Ring::Exact,
            Coeffs::Mod { m, .. } => Ring::Mod(*m),
        }
    }

    pub fn order(&self) -> usize {
        self.len() - 1
    }

    fn len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.len(),
            Coeffs::Mod { r, .. } => r.len(),
        }
    }

    /// Coefficient of `q^n`, or `None` past the order.
    pub fn coeff(&self, n: usize) -> Option<BigInt> {
        match &self.coeffs {
            Coeffs::Exact(c) => c.get(n).cloned(),
            Coeffs::Mod { r, .. } => r.get(n).map(|&v| BigInt::from(v)),
        }
    }

    pub fn coeffs(&self) -> Vec<BigInt> {
        (0..self.len()).map(|n| self.coeff(n).unwrap()).collect()
    }

    /// Residue of the coefficient of `q^n` modulo `m`.
    ///
    /// For a residue series `m` must divide the ring modulus.
    pub fn residue(&self, n: usize, m: u64) -> Result<u64> {
        if n > self.order() {
            return Err(Error::OrderExceeded { requested: n, available: self.order() });
        }
        match &self.coeffs {
            Coeffs::Exact(c) => Ok(residue(&c[n], m)),
            Coeffs::Mod { m: ring_m, r } => {
                if ring_m % m != 0 {
                    return Err(Error::RingMismatch { left: self.ring(), right: Ring::Mod(m) });
                }
                Ok(r[n] % m)
            }
        }
    }

    pub fn is_zero_at(&self, n: usize) -> bool {
        match &self.coeffs {
            Coeffs::Exact(c) => c.get(n).is_some_and(|v| v.is_zero()),
            Coeffs::Mod { r, .. } => r.get(n).is_some_and(|&v| v == 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.len()).all(|n| self.is_zero_at(n))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        with_arith2!(self, other, ar, a, b => a.iter().zip(b).map(|(x, y)| ar.add(x, y)).collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        with_arith2!(self, other, ar, a, b => a.iter().zip(b).map(|(x, y)| ar.sub(x, y)).collect())
    }

    pub fn neg(&self) -> Self {
        with_arith!(self, ar, a => a.iter().map(|x| ar.sub(&ar.zero(), x)).collect())
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        with_arith!(self, ar, a => {
            let c = ar.from_big(&c);
            a.iter().map(|x| ar.mul(&c, x)).collect()
        })
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        with_arith2!(self, other, ar, a, b => mul_vec(&ar, a, b))
    }

    /// `self^e`; negative exponents go through [`QSeries::invert`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = QSeries::one(self.order(), self.ring());
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Self> {
        let err = || Error::NonUnitConstant { constant: self.coeff(0).unwrap().to_string(), ring: self.ring() };
        match &self.coeffs {
            Coeffs::Exact(a) => Ok(QSeries { coeffs: Coeffs::Exact(invert_vec(&ExactArith, a).ok_or_else(err)?) }),
            Coeffs::Mod { m, r } => {
                Ok(QSeries { coeffs: Coeffs::Mod { m: *m, r: invert_vec(&ModArith(*m), r).ok_or_else(err)? } })
            }
        }
    }

    /// Substitutes `q -> q^k`.
    pub fn dilate(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("dilation factor must be at least 1".into()));
        }
        let order = (self.order() * k).min(self.ring().max_order());
        Ok(with_arith!(self, ar, a => {
            let mut out = vec![ar.zero(); order + 1];
            for (n, c) in a.iter().enumerate().take_while(|(n, _)| n * k <= order) {
                out[n * k] = c.clone();
            }
            out
        }))
    }

    /// Multiplies by `q^s`. A negative `s` divides by `q^{|s|}` and needs the
    /// dropped coefficients to vanish.
    pub fn shift(&self, s: i64) -> Result<Self> {
        if s >= 0 {
            let s = s as usize;
            let order = (self.order() + s).min(self.ring().max_order());
            Ok(with_arith!(self, ar, a => {
                let mut out = vec![ar.zero(); order + 1];
                for (n, c) in a.iter().enumerate().take_while(|(n, _)| n + s <= order) {
                    out[n + s] = c.clone();
                }
                out
            }))
        } else {
            let d = s.unsigned_abs() as usize;
            if let Some(index) = (0..d.min(self.len())).find(|&n| !self.is_zero_at(n)) {
                return Err(Error::ShiftPastNonzero { shift: s, index });
            }
            if d > self.order() {
                return Err(Error::OrderExceeded { requested: d, available: self.order() });
            }
            Ok(with_arith!(self, _ar, a => a[d..].to_vec()))
        }
    }

    /// The series `Σ c_{kn+r} q^n`.
    pub fn extract(&self, k: usize, r: usize) -> Result<Self> {
        if k == 0 || r >= k {
            return Err(Error::Precondition(format!("need k >= 1 and 0 <= r < k, got k={k}, r={r}")));
        }
        if r > self.order() {
            return Err(Error::OrderExceeded { requested: r, available: self.order() });
        }
        Ok(with_arith!(self, _ar, a => a.iter().skip(r).step_by(k).cloned().collect()))
    }

    /// Drops every coefficient past `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderExceeded { requested: order, available: self.order() });
        }
        Ok(with_arith!(self, _ar, a => a[..=order].to_vec()))
    }

    /// Maps the series into `ring`: exact to residues, or residues modulo a
    /// multiple of the target modulus down to the target.
    pub fn reduce(&self, ring: Ring) -> Result<Self> {
        match (&self.coeffs, ring) {
            (_, r) if r == self.ring() => Ok(self.clone()),
            (Coeffs::Exact(c), Ring::Mod(m)) => QSeries::new(c.clone(), Ring::modulo(m)?),
            (Coeffs::Mod { m: big, r }, Ring::Mod(m)) if big % m == 0 => {
                Ok(QSeries { coeffs: Coeffs::Mod { m, r: r.iter().map(|v| v % m).collect() } })
            }
            _ => Err(Error::RingMismatch { left: self.ring(), right: ring }),
        }
    }

    /// Checks `self ≡ other (mod m)` for every index `0..=n_max`.
    pub fn congruent_upto(&self, other: &Self, m: u64, n_max: usize) -> Result<Congruence> {
        if self.ring() != other.ring() {
            return Err(Error::RingMismatch { left: self.ring(), right: other.ring() });
        }
        if m == 0 {
            return Err(Error::InvalidModulus { got: 0, max: MAX_MODULUS });
        }
        let available = self.order().min(other.order());
        if n_max > available {
            return Err(Error::OrderExceeded { requested: n_max, available });
        }
        for n in 0..=n_max {
            let (l, r) = (self.residue(n, m)?, other.residue(n, m)?);
            if l != r {
                return Ok(Congruence { modulus: m, checked_upto: n_max, mismatch: Some(Mismatch { index: n, left: l, right: r }) });
            }
        }
        Ok(Congruence { modulus: m, checked_upto: n_max, mismatch: None })
    }

    /// Multiplies by the sparse polynomial `Σ c_t q^{e_t}` (terms sorted by exponent).
    pub(crate) fn mul_sparse(&self, terms: &[(usize, i64)]) -> Self {
        match &self.coeffs {
            Coeffs::Exact(a) => {
                let mut out = vec![BigInt::zero(); a.len()];
                for (i, slot) in out.iter_mut().enumerate() {
                    for &(e, c) in terms.iter().take_while(|(e, _)| *e <= i) {
                        let v = &a[i - e];
                        match c {
                            1 => *slot += v,
                            -1 => *slot -= v,
                            c => *slot += v * c,
                        }
                    }
                }
                QSeries { coeffs: Coeffs::Exact(out) }
            }
            Coeffs::Mod { m, r } => {
                let mm = *m as i128;
                let out = (0..r.len())
                    .map(|i| {
                        let acc: i128 = terms
                            .iter()
                            .take_while(|(e, _)| *e <= i)
                            .map(|&(e, c)| c as i128 * r[i - e] as i128)
                            .sum();
                        acc.rem_euclid(mm) as u64
                    })
                    .collect();
                QSeries { coeffs: Coeffs::Mod { m: *m, r: out } }
            }
        }
    }

    /// Divides by the sparse polynomial `Σ c_t q^{e_t}`, whose first term must
    /// be the constant `±1`.
    pub(crate) fn div_sparse(&self, terms: &[(usize, i64)]) -> Result<Self> {
        let lead = match terms.first() {
            Some(&(0, c)) if c == 1 || c == -1 => c,
            _ => return Err(Error::Precondition("sparse divisor must start with constant ±1".into())),
        };
        let rest = &terms[1..];
        match &self.coeffs {
            Coeffs::Exact(a) => {
                let mut out: Vec<BigInt> = a.clone();
                for i in 0..out.len() {
                    let mut acc = std::mem::take(&mut out[i]);
                    for &(e, c) in rest.iter().take_while(|(e, _)| *e <= i) {
                        match c {
                            1 => acc -= &out[i - e],
                            -1 => acc += &out[i - e],
                            c => acc -= &out[i - e] * c,
                        }
                    }
                    out[i] = if lead == 1 { acc } else { -acc };
                }
                Ok(QSeries { coeffs: Coeffs::Exact(out) })
            }
            Coeffs::Mod { m, r } => {
                let mm = *m as i128;
                let mut out = r.clone();
                for i in 0..out.len() {
                    let mut acc = out[i] as i128;
                    for &(e, c) in rest.iter().take_while(|(e, _)| *e <= i) {
                        acc -= c as i128 * out[i - e] as i128;
                    }
                    out[i] = (acc * lead as i128).rem_euclid(mm) as u64;
                }
                Ok(QSeries { coeffs: Coeffs::Mod { m: *m, r: out } })
            }
        }
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            match n {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}")?,
            }
            match n {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}
