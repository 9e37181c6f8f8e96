//! Dissection identities as data, with an evaluator and verifier.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::etaq::{expand_monomial, Factors};
use crate::series::{QSeries, Ring};

/// `c · q^s · ∏ f_m^{e_m}`; serialized as `[c, s, [[m, e], ...]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMonomial", into = "RawMonomial")]
pub struct Monomial {
    pub coeff: i64,
    pub q_shift: usize,
    pub factors: Factors,
}

type RawMonomial = (i64, usize, Vec<(u64, i64)>);

impl TryFrom<RawMonomial> for Monomial {
    type Error = Error;
    fn try_from((coeff, q_shift, pairs): RawMonomial) -> Result<Self> {
        Monomial::new(coeff, q_shift, &pairs)
    }
}

impl From<Monomial> for RawMonomial {
    fn from(m: Monomial) -> Self {
        (m.coeff, m.q_shift, m.factors.into_iter().collect())
    }
}

impl Monomial {
    pub fn new(coeff: i64, q_shift: usize, pairs: &[(u64, i64)]) -> Result<Self> {
        let mut factors = Factors::new();
        for &(m, e) in pairs {
            if m == 0 || e == 0 {
                return Err(Error::Precondition(format!("bad factor f_{m}^{e}")));
            }
            if factors.insert(m, e).is_some() {
                return Err(Error::Precondition(format!("f_{m} listed twice")));
            }
        }
        Ok(Monomial { coeff, q_shift, factors })
    }

    /// A monomial with a pre-merged factor map; zero exponents are dropped.
    pub fn from_factors(coeff: i64, q_shift: usize, mut factors: Factors) -> Self {
        factors.retain(|_, e| *e != 0);
        Monomial { coeff, q_shift, factors }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        match self.q_shift {
            0 => {}
            1 => write!(f, "q")?,
            s => write!(f, "q^{s}")?,
        }
        for (m, e) in &self.factors {
            match e {
                1 => write!(f, " f{m}")?,
                e => write!(f, " f{m}^{e}")?,
            }
        }
        Ok(())
    }
}

/// A non-empty sum of monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Monomial>", into = "Vec<Monomial>")]
pub struct SeriesExpr {
    monomials: Vec<Monomial>,
}

impl TryFrom<Vec<Monomial>> for SeriesExpr {
    type Error = Error;
    fn try_from(monomials: Vec<Monomial>) -> Result<Self> {
        SeriesExpr::new(monomials)
    }
}

impl From<SeriesExpr> for Vec<Monomial> {
    fn from(e: SeriesExpr) -> Self {
        e.monomials
    }
}

impl SeriesExpr {
    pub fn new(monomials: Vec<Monomial>) -> Result<Self> {
        if monomials.is_empty() {
            return Err(Error::Precondition("expression needs at least one monomial".into()));
        }
        Ok(SeriesExpr { monomials })
    }

    /// The zero expression, written as a single monomial with coefficient 0.
    pub fn zero() -> Self {
        SeriesExpr { monomials: vec![Monomial::from_factors(0, 0, Factors::new())] }
    }

    pub fn single(m: Monomial) -> Self {
        SeriesExpr { monomials: vec![m] }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomials_mut(&mut self) -> &mut [Monomial] {
        &mut self.monomials
    }
}

impl fmt::Display for SeriesExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.monomials.iter().map(Monomial::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Evaluates `e` to `order` in `ring`.
pub fn eval_expr(e: &SeriesExpr, order: usize, ring: Ring) -> Result<QSeries> {
    let mut acc = QSeries::zero(order, ring);
    for m in &e.monomials {
        if m.coeff == 0 {
            continue;
        }
        acc = acc.add(&expand_monomial(m.coeff, m.q_shift, &m.factors, order, ring)?.series)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    Exact,
    Congruence(u64),
}

impl IdentityKind {
    fn ring(self) -> Result<Ring> {
        match self {
            IdentityKind::Exact => Ok(Ring::Exact),
            IdentityKind::Congruence(m) => Ring::modulo(m),
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityKind::Exact => write!(f, "exact"),
            IdentityKind::Congruence(m) => write!(f, "mod {m}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionIdentity {
    pub id: String,
    pub kind: IdentityKind,
    pub lhs: SeriesExpr,
    pub rhs: SeriesExpr,
}

/// First coefficient where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFailure {
    pub index: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub id: String,
    pub kind: IdentityKind,
    pub order: usize,
    pub failure: Option<IdentityFailure>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

pub(crate) fn first_difference(a: &QSeries, b: &QSeries) -> Option<IdentityFailure> {
    (0..=a.order().min(b.order())).find_map(|n| {
        let (l, r) = (a.coeff(n).unwrap(), b.coeff(n).unwrap());
        (l != r).then_some(IdentityFailure { index: n, lhs: l, rhs: r })
    })
}

/// Compares both sides coefficientwise up to `order` (in `ℤ/mℤ` for congruences).
pub fn verify_identity(identity: &DissectionIdentity, order: usize) -> Result<IdentityOutcome> {
    let ring = identity.kind.ring()?;
    let lhs = eval_expr(&identity.lhs, order, ring)?;
    let rhs = eval_expr(&identity.rhs, order, ring)?;
    Ok(IdentityOutcome {
        id: identity.id.clone(),
        kind: identity.kind,
        order,
        failure: first_difference(&lhs, &rhs),
    })
}

/// Looks `id` up in the built-in catalogue and verifies it.
pub fn verify_identity_by_id(id: &str, order: usize) -> Result<IdentityOutcome> {
    let identity = Catalogue::builtin().get(id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    verify_identity(identity, order)
}

/// `f_{pm}^{p^{k-1}} ≡ f_m^{p^k} (mod p^k)` as an identity record.
pub fn frobenius_identity(p: u64, k: u32, m: u64) -> Result<DissectionIdentity> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 || m == 0 {
        return Err(Error::Precondition("need k >= 1 and m >= 1".into()));
    }
    let modulus = p.checked_pow(k).filter(|&v| v <= crate::series::MAX_MODULUS);
    let modulus = modulus.ok_or_else(|| Error::Precondition(format!("{p}^{k} is too large")))?;
    let lhs = Monomial::new(1, 0, &[(p * m, (modulus / p) as i64)])?;
    let rhs = Monomial::new(1, 0, &[(m, modulus as i64)])?;
    Ok(DissectionIdentity {
        id: format!("frobenius:{p},{k},{m}"),
        kind: IdentityKind::Congruence(modulus),
        lhs: SeriesExpr::single(lhs),
        rhs: SeriesExpr::single(rhs),
    })
}

/// Verifies `f_{pm}^{p^{k-1}} ≡ f_m^{p^k} (mod p^k)` up to `order`.
pub fn verify_frobenius_congruence(p: u64, k: u32, m: u64, order: usize) -> Result<IdentityOutcome> {
    verify_identity(&frobenius_identity(p, k, m)?, order)
}

/// Outcome for one residue class of a dissection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentOutcome {
    pub residue: usize,
    pub order: usize,
    pub failure: Option<IdentityFailure>,
}

/// Checks that the `k`-dissection of `f` has the given components, each
/// written as a series in `q` (the residue-`r` part `Σ a(kn+r) q^n`).
pub fn verify_dissection_consistency(
    f: &SeriesExpr,
    k: usize,
    components: &[SeriesExpr],
    order: usize,
    kind: IdentityKind,
) -> Result<Vec<ComponentOutcome>> {
    if components.len() != k {
        return Err(Error::Precondition(format!("{k}-dissection needs {k} components, got {}", components.len())));
    }
    let ring = kind.ring()?;
    let whole = eval_expr(f, order, ring)?;
    components
        .iter()
        .enumerate()
        .map(|(r, comp)| {
            let part = whole.extract(k, r)?;
            let expected = eval_expr(comp, part.order(), ring)?;
            Ok(ComponentOutcome { residue: r, order: part.order(), failure: first_difference(&part, &expected) })
        })
        .collect()
}

/// An ordered set of identities with a line-oriented text form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Catalogue {
    identities: Vec<DissectionIdentity>,
}

const BUILTIN: &str = include_str!("../data/identities.txt");

impl Catalogue {
    pub fn new(identities: Vec<DissectionIdentity>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = identities.iter().find(|i| !seen.insert(i.id.as_str())) {
            return Err(Error::Precondition(format!("duplicate identity id `{}`", dup.id)));
        }
        Ok(Catalogue { identities })
    }

    /// The identities shipped in `data/identities.txt`.
    pub fn builtin() -> &'static Catalogue {
        static CAT: OnceLock<Catalogue> = OnceLock::new();
        CAT.get_or_init(|| Catalogue::parse(BUILTIN).expect("built-in catalogue parses"))
    }

    pub fn identities(&self) -> &[DissectionIdentity] {
        &self.identities
    }

    pub fn get(&self, id: &str) -> Option<&DissectionIdentity> {
        self.identities.iter().find(|i| i.id == id)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            out.push(parse_line(line).map_err(|message| Error::Parse { line: i + 1, message })?);
        }
        Catalogue::new(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for id in &self.identities {
            let lhs = serde_json::to_string(&id.lhs).expect("serializable");
            let rhs = serde_json::to_string(&id.rhs).expect("serializable");
            s.push_str(&format!("{} | {} | {} | {}\n", id.id, id.kind, lhs, rhs));
        }
        s
    }
}

fn parse_line(line: &str) -> std::result::Result<DissectionIdentity, String> {
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    let [id, kind, lhs, rhs] = fields[..] else {
        return Err(format!("expected 4 `|`-separated fields, found {}", fields.len()));
    };
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(format!("bad identity id `{id}`"));
    }
    let kind = match kind.split_whitespace().collect::<Vec<_>>()[..] {
        ["exact"] => IdentityKind::Exact,
        ["mod", m] => {
            let m: u64 = m.parse().map_err(|_| format!("bad modulus `{m}`"))?;
            if m < 2 {
                return Err(format!("modulus must be at least 2, got {m}"));
            }
            IdentityKind::Congruence(m)
        }
        _ => return Err(format!("bad kind `{kind}`, expected `exact` or `mod M`")),
    };
    let lhs = serde_json::from_str(lhs).map_err(|e| format!("left side: {e}"))?;
    let rhs = serde_json::from_str(rhs).map_err(|e| format!("right side: {e}"))?;
    Ok(DissectionIdentity { id: id.to_string(), kind, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etaq::{expand_product, factors};

    #[test]
    fn builtin_catalogue_loads() {
        let cat = Catalogue::builtin();
        assert_eq!(cat.identities().len(), 18);
        assert_eq!(Catalogue::parse(&cat.to_text()).unwrap(), *cat);
    }

    #[test]
    fn eval_single_unit() {
        let e = SeriesExpr::single(Monomial::new(1, 0, &[]).unwrap());
        assert_eq!(eval_expr(&e, 6, Ring::Exact).unwrap(), QSeries::one(6, Ring::Exact));
        assert!(eval_expr(&SeriesExpr::zero(), 4, Ring::Exact).unwrap().is_zero());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let bad = "# c\n\nx | exact | [[1,0,[]]] | [[1,0,[]]]\ny | mod 1 | [[1,0,[]]] | [[1,0,[]]]\n";
        assert!(matches!(Catalogue::parse(bad), Err(Error::Parse { line: 4, .. })));
        assert!(Catalogue::parse("x | exact | [] | [[1,0,[]]]").is_err());
        assert!(Catalogue::parse("x | exact | [[1,0,[[2,0]]]] | [[1,0,[]]]").is_err());
        assert!(Catalogue::parse("x | exact | [[1,0,[]]]").is_err());
        let dup = "x | exact | [[1,0,[]]] | [[1,0,[]]]\nx | exact | [[1,0,[]]] | [[1,0,[]]]";
        assert!(Catalogue::parse(dup).is_err());
    }

    #[test]
    fn frobenius_instances() {
        for (p, k, m) in [(2, 1, 1), (3, 1, 1), (2, 2, 1)] {
            assert!(verify_frobenius_congruence(p, k, m, 100).unwrap().holds());
        }
        assert!(matches!(verify_frobenius_congruence(4, 1, 1, 10), Err(Error::NotPrime(4))));
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(verify_identity_by_id("nope", 10), Err(Error::UnknownIdentity(_))));
    }

    #[test]
    fn square_dissection_components() {
        let f = SeriesExpr::single(Monomial::new(1, 0, &[(1, 2)]).unwrap());
        let even = SeriesExpr::single(Monomial::new(1, 0, &[(1, 1), (4, 5), (2, -2), (8, -2)]).unwrap());
        let odd = SeriesExpr::single(Monomial::new(-2, 0, &[(1, 1), (8, 2), (4, -1)]).unwrap());
        let out = verify_dissection_consistency(&f, 2, &[even.clone(), odd], 60, IdentityKind::Exact).unwrap();
        assert!(out.iter().all(|c| c.failure.is_none()));
        assert!(verify_dissection_consistency(&f, 3, &[even], 60, IdentityKind::Exact).is_err());
        let direct = expand_product(&factors(&[(1, 2)]), 30, Ring::Exact).unwrap();
        assert_eq!(eval_expr(&f, 30, Ring::Exact).unwrap(), direct);
    }
}
