//! Hecke operators on q-expansions and Newman's three-term recursion.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{is_prime, kronecker, modularity_check, Character};
use crate::error::{Error, Result};
use crate::etaq::{expand_product, factors, materialize_eta, EtaQuotient};
use crate::series::{QSeries, Ring};

/// Weight, level and character of a space of modular forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeContext {
    pub weight: u32,
    pub level: u64,
    pub character: Character,
}

impl HeckeContext {
    /// Context of the space containing the eta-quotient `eq` at `level`.
    pub fn for_eta(eq: &EtaQuotient, level: u64) -> Result<Self> {
        let report = modularity_check(eq, level)?;
        if !report.conditions_hold() {
            return Err(Error::Precondition(format!("{eq} is not modular at level {level}")));
        }
        let weight = report.weight.to_integer();
        if weight < 1 {
            return Err(Error::Precondition(format!("weight {weight} is not positive")));
        }
        let character = report.character(eq).expect("integral weight");
        Ok(HeckeContext { weight: weight as u32, level, character })
    }

    /// `χ(d)`, zero whenever `d` shares a factor with the level.
    pub fn chi(&self, d: u64) -> i8 {
        if num_integer::gcd(d, self.level) > 1 {
            return 0;
        }
        self.character.eval(d as i64)
    }
}

fn require_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `T_p`: `n ↦ a(pn) + χ(p) p^{k-1} a(n/p)`, with `a(n/p) = 0` for `p ∤ n`.
///
/// The result has order `⌊order(a) / p⌋`.
pub fn apply_tp(a: &QSeries, p: u64, ctx: &HeckeContext) -> Result<QSeries> {
    require_prime(p)?;
    let p_us = p as usize;
    let out_order = a.order() / p_us;
    let tail = BigInt::from(ctx.chi(p)) * BigInt::from(p).pow(ctx.weight - 1);
    let coeffs = (0..=out_order)
        .map(|n| {
            let mut v = a.coeff(n * p_us).expect("within order");
            if n % p_us == 0 {
                v += &tail * a.coeff(n / p_us).expect("within order");
            }
            v
        })
        .collect();
    QSeries::new(coeffs, a.ring())
}

/// Outcome of an eigenform test for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenOutcome {
    pub p: u64,
    pub lambda: BigInt,
    pub checked_upto: usize,
    pub counterexample: Option<usize>,
}

impl EigenOutcome {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Tests `T_p a = λ a` up to `n_max`, reading `λ` off the coefficient of `q`.
pub fn eigen_check(a: &QSeries, p: u64, ctx: &HeckeContext, n_max: usize) -> Result<EigenOutcome> {
    require_prime(p)?;
    if a.coeff(1) != Some(BigInt::one()) {
        return Err(Error::Precondition("eigenform must be normalized with a(1) = 1".into()));
    }
    let needed = n_max * p as usize;
    if needed > a.order() {
        return Err(Error::OrderExceeded { requested: needed, available: a.order() });
    }
    let t = apply_tp(a, p, ctx)?;
    let lambda = t.coeff(1).expect("order at least 1");
    let counterexample = (0..=n_max).find(|&n| {
        let lhs = t.coeff(n).unwrap();
        let rhs = &lambda * a.coeff(n).unwrap();
        a.ring().reduce(&(lhs - rhs)) != BigInt::zero()
    });
    Ok(EigenOutcome { p, lambda, checked_upto: n_max, counterexample })
}

/// Outcome of a coefficient-pattern scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternCheck {
    pub checked_upto: usize,
    pub first_failure: Option<usize>,
}

impl PatternCheck {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Tests `a(n) = 0` for every `n ≤ n_max` with `n ≢ r (mod m)`.
pub fn vanishing_class_check(a: &QSeries, m: u64, r: u64, n_max: usize) -> Result<PatternCheck> {
    if m == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if n_max > a.order() {
        return Err(Error::OrderExceeded { requested: n_max, available: a.order() });
    }
    let first_failure = (0..=n_max).find(|&n| n as u64 % m != r % m && !a.is_zero_at(n));
    Ok(PatternCheck { checked_upto: n_max, first_failure })
}

/// Tests the consequences of `λ(p) = 0` at every index `≤ index_max`:
/// `a(p²n + pr) = 0` for `p ∤ r` and `a(p²n) = -χ(p) p^{k-1} a(n)`.
pub fn zero_eigenvalue_recursion(a: &QSeries, p: u64, ctx: &HeckeContext, index_max: usize) -> Result<PatternCheck> {
    require_prime(p)?;
    if index_max > a.order() {
        return Err(Error::OrderExceeded { requested: index_max, available: a.order() });
    }
    let p = p as usize;
    let factor = -BigInt::from(ctx.chi(p as u64)) * BigInt::from(p).pow(ctx.weight - 1);
    let first_failure = (0..=index_max).filter(|m| m % p == 0).find(|&m| {
        let lhs = a.coeff(m).unwrap();
        let rhs = if (m / p) % p == 0 { &factor * a.coeff(m / (p * p)).unwrap() } else { BigInt::zero() };
        a.ring().reduce(&(lhs - rhs)) != BigInt::zero()
    });
    Ok(PatternCheck { checked_upto: index_max, first_failure })
}

/// The two eigenforms used for the multiplicative congruences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NamedForm {
    /// `η⁴(6z)` on `Γ0(36)`.
    Eta6Pow4,
    /// `η(4z)η(20z)` on `Γ0(80)`.
    Eta4Eta20,
}

impl NamedForm {
    pub fn eta(self) -> EtaQuotient {
        match self {
            NamedForm::Eta6Pow4 => "6:4".parse().unwrap(),
            NamedForm::Eta4Eta20 => "4:1,20:1".parse().unwrap(),
        }
    }

    pub fn level(self) -> u64 {
        match self {
            NamedForm::Eta6Pow4 => 36,
            NamedForm::Eta4Eta20 => 80,
        }
    }

    /// Residue class `(m, r)` carrying every nonzero coefficient.
    pub fn support_class(self) -> (u64, u64) {
        match self {
            NamedForm::Eta6Pow4 => (6, 1),
            NamedForm::Eta4Eta20 => (4, 1),
        }
    }

    pub fn context(self) -> HeckeContext {
        HeckeContext::for_eta(&self.eta(), self.level()).expect("named forms are modular")
    }

    pub fn expansion(self, order: usize) -> Result<QSeries> {
        Ok(materialize_eta(&self.eta(), order, Ring::Exact)?.series)
    }
}

impl fmt::Display for NamedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedForm::Eta6Pow4 => "eta6_4",
            NamedForm::Eta4Eta20 => "eta4_20",
        })
    }
}

impl FromStr for NamedForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eta6_4" => Ok(NamedForm::Eta6Pow4),
            "eta4_20" => Ok(NamedForm::Eta4Eta20),
            _ => Err(Error::Precondition(format!("unknown form `{s}`, expected eta6_4 or eta4_20"))),
        }
    }
}

/// Products with a Newman three-term recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NewmanProduct {
    F1F3,
    F1F5,
}

impl NewmanProduct {
    /// `(c, D)`: primes must satisfy `p ≡ 1 (mod c)`; `(D/p)` enters the sign.
    pub fn params(self) -> (u64, i64) {
        match self {
            NewmanProduct::F1F3 => (6, 3),
            NewmanProduct::F1F5 => (4, 5),
        }
    }

    pub fn expansion(self, order: usize) -> Result<QSeries> {
        let m = match self {
            NewmanProduct::F1F3 => 3,
            NewmanProduct::F1F5 => 5,
        };
        expand_product(&factors(&[(1, 1), (m, 1)]), order, Ring::Exact)
    }
}

/// Tests `u(pn + s) = u(s) u(n) - (-1)^{(p-1)/2} (D/p) u((n - s)/p)` with
/// `s = (p-1)/c`, for `n ≤ n_max`. The last term is dropped when `(n - s)/p`
/// is not a non-negative integer.
pub fn newman_check(product: NewmanProduct, p: u64, n_max: usize) -> Result<PatternCheck> {
    require_prime(p)?;
    let (c, d) = product.params();
    if p % c != 1 {
        return Err(Error::Precondition(format!("{p} is not 1 mod {c}")));
    }
    let s = ((p - 1) / c) as usize;
    let p_us = p as usize;
    let u = product.expansion(p_us * n_max + s)?;
    let sign = if ((p - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let tail = BigInt::from(sign * kronecker(d, p as i64) as i64);
    let us = u.coeff(s).unwrap();
    let first_failure = (0..=n_max).find(|&n| {
        let lhs = u.coeff(p_us * n + s).unwrap();
        let mut rhs = &us * u.coeff(n).unwrap();
        if n >= s && (n - s) % p_us == 0 {
            rhs -= &tail * u.coeff((n - s) / p_us).unwrap();
        }
        lhs != rhs
    });
    Ok(PatternCheck { checked_upto: n_max, first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn tp_on_weight_two_form() {
        let form = NamedForm::Eta6Pow4;
        let a = form.expansion(49).unwrap();
        assert_eq!(a.coeff(49).unwrap(), 9.into());
        let t = apply_tp(&a, 7, &form.context()).unwrap();
        assert_eq!(t.order(), 7);
        assert_eq!(t.coeff(1).unwrap(), (-4).into());
        assert_eq!(t.coeff(7).unwrap(), BigInt::from(9 + 7));
        let zero = QSeries::zero(30, Ring::Exact);
        assert!(apply_tp(&zero, 5, &form.context()).unwrap().is_zero());
        assert!(apply_tp(&a, 9, &form.context()).is_err());
    }

    #[test]
    fn eigenvalues() {
        let form = NamedForm::Eta6Pow4;
        let a = form.expansion(520).unwrap();
        let ctx = form.context();
        let seven = eigen_check(&a, 7, &ctx, 40).unwrap();
        assert!(seven.holds());
        assert_eq!(seven.lambda.to_i64(), Some(-4));
        assert_eq!(eigen_check(&a, 5, &ctx, 40).unwrap().lambda, 0.into());
        assert!(eigen_check(&a, 13, &ctx, 41).is_err());
        assert!(eigen_check(&a.scale(2), 5, &ctx, 4).is_err());
    }

    #[test]
    fn non_eigenform_is_caught() {
        let form = NamedForm::Eta6Pow4;
        let a = form.expansion(200).unwrap();
        let bumped = a.add(&QSeries::monomial(1, 13, 200, Ring::Exact)).unwrap();
        let out = eigen_check(&bumped, 7, &form.context(), 20).unwrap();
        assert!(!out.holds());
    }

    #[test]
    fn support_classes() {
        let f1 = crate::etaq::pochhammer(1, 30, Ring::Exact).unwrap();
        assert_eq!(vanishing_class_check(&f1, 6, 1, 30).unwrap().first_failure, Some(0));
        let a = NamedForm::Eta4Eta20.expansion(100).unwrap();
        assert!(vanishing_class_check(&a, 4, 1, 100).unwrap().holds());
    }

    #[test]
    fn zero_eigenvalue_consequences() {
        let form = NamedForm::Eta6Pow4;
        let a = form.expansion(500).unwrap();
        assert!(zero_eigenvalue_recursion(&a, 5, &form.context(), 500).unwrap().holds());
        assert!(!zero_eigenvalue_recursion(&a, 7, &form.context(), 500).unwrap().holds());
    }

    #[test]
    fn newman_small_cases() {
        let u = NewmanProduct::F1F3.expansion(8).unwrap();
        assert_eq!(u.coeff(8).unwrap(), 0.into());
        assert!(newman_check(NewmanProduct::F1F3, 7, 30).unwrap().holds());
        assert!(newman_check(NewmanProduct::F1F5, 13, 30).unwrap().holds());
        assert!(newman_check(NewmanProduct::F1F5, 3, 10).is_err());
        assert!(newman_check(NewmanProduct::F1F3, 9, 10).is_err());
    }

    #[test]
    fn form_names_round_trip() {
        for f in [NamedForm::Eta6Pow4, NamedForm::Eta4Eta20] {
            assert_eq!(f.to_string().parse::<NamedForm>().unwrap(), f);
        }
        assert!("eta".parse::<NamedForm>().is_err());
    }
}
