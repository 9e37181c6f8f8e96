use serde::Serialize;

use super::{ClaimKind, CongruenceClaim, Progression};
use crate::arith::is_prime;
use crate::dissect::{Monomial, SeriesExpr};
use crate::error::{Error, Result};
use crate::etaq::{factors, BiregularSpec};

/// Shape of a family of vanishing congruences indexed by primes `p_1..p_{k+1}`
/// and `j ≢ 0 (mod p_{k+1})`. With `P = p_1⋯p_{k+1}` and `P' = p_1⋯p_k`:
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyShape {
    /// `6P²n + (6j + p_{k+1}) P'² p_{k+1}`, primes `p ≥ 5`, `p ≡ 5 (mod 6)`.
    Six,
    /// `18P²n + 3(6j + p_{k+1}) P'² p_{k+1}`, same primes.
    Eighteen,
    /// `4P²n + (4j + p_{k+1}) P'² p_{k+1}`, primes `p ≡ 3 (mod 4)`.
    Four,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Family {
    pub spec: BiregularSpec,
    pub shape: FamilyShape,
    pub modulus: u64,
}

impl FamilyShape {
    fn admits(self, p: u64) -> bool {
        match self {
            FamilyShape::Six | FamilyShape::Eighteen => p % 6 == 5,
            FamilyShape::Four => p % 4 == 3,
        }
    }
}

/// Builds the concrete vanishing claim for `primes` and `j`.
pub fn instantiate_family(family: Family, primes: &[u64], j: u64, n_max: u64) -> Result<CongruenceClaim> {
    let Some((&last, head)) = primes.split_last() else {
        return Err(Error::Precondition("at least one prime is required".into()));
    };
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !family.shape.admits(p) {
            let class = match family.shape {
                FamilyShape::Four => "3 mod 4",
                _ => "5 mod 6",
            };
            return Err(Error::Precondition(format!("prime {p} is not {class}")));
        }
    }
    if j % last == 0 {
        return Err(Error::Precondition(format!("j = {j} is divisible by {last}")));
    }
    let j = j % last;
    let inner: u64 = head.iter().map(|p| p * p).product();
    let (step, base, mult) = match family.shape {
        FamilyShape::Six => (6, 6, 1),
        FamilyShape::Eighteen => (18, 6, 3),
        FamilyShape::Four => (4, 4, 1),
    };
    let a = step * inner * last * last;
    let b = mult * (base * j + last) * inner * last;
    let prog = Progression::new(a, b)?;
    let plist: Vec<String> = primes.iter().map(u64::to_string).collect();
    let id = format!("{}.{}.mod{}", spec_id(family.spec), prog, family.modulus);
    let kind = ClaimKind::FamilyInstance { family, primes: primes.to_vec(), j };
    Ok(CongruenceClaim::new(id, family.spec, prog, family.modulus, kind, n_max)?
        .with_note(format!("family instance with primes {} and j = {j}", plist.join(","))))
}

/// `-1` for `p ≡ 3, 7 (mod 20)` and `+1` for `p ≡ 11, 19 (mod 20)`.
pub fn quartic_sign(p: u64) -> Result<i64> {
    match p % 20 {
        3 | 7 => Ok(-1),
        11 | 19 => Ok(1),
        _ => Err(Error::Precondition(format!("{p} is not 3 mod 4 and coprime to 5"))),
    }
}

fn spec_id(spec: BiregularSpec) -> String {
    format!("{}-{}", spec.l1(), spec.l2())
}

fn sp(a: u64, b: u64) -> BiregularSpec {
    BiregularSpec::new(a, b).expect("valid built-in spec")
}

fn prog(a: u64, b: u64) -> Progression {
    Progression { a, b }
}

fn vanishing(spec: BiregularSpec, a: u64, b: u64, m: u64, n_max: u64) -> CongruenceClaim {
    let p = prog(a, b);
    CongruenceClaim::new(format!("{}.{p}.mod{m}", spec_id(spec)), spec, p, m, ClaimKind::Vanishing, n_max)
        .expect("valid built-in claim")
}

fn series(spec: BiregularSpec, a: u64, b: u64, m: u64, tag: &str, c: i64, pairs: &[(u64, i64)], n_max: u64) -> CongruenceClaim {
    let p = prog(a, b);
    let target = SeriesExpr::single(Monomial::from_factors(c, 0, factors(pairs)));
    let id = format!("{}.{p}.mod{m}.{tag}", spec_id(spec));
    CongruenceClaim::new(id, spec, p, m, ClaimKind::SeriesCongruence { target }, n_max).expect("valid built-in claim")
}

/// `B̄(base·p^{k+1}n + base·p·r + off·p) ≡ factor · B̄(base·p^{k-1}n + (base·r + off)/p)`.
fn multiplicative(spec: BiregularSpec, base: u64, off: u64, p: u64, k: u32, r: u64, factor: i64, m: u64, n_max: u64) -> CongruenceClaim {
    assert_eq!((base * r + off) % p, 0, "p must divide base*r + off");
    let lhs = prog(base * p.pow(k + 1), base * p * r + off * p);
    let rhs = prog(base * p.pow(k - 1), (base * r + off) / p);
    related(spec, lhs, rhs, p, k, Some(r), factor, m, n_max)
}

/// `B̄(base·p^{2k}n + c·p^{2k}) ≡ factor · B̄(base·n + c)`.
fn iterated(spec: BiregularSpec, base: u64, c: u64, p: u64, k: u32, factor: i64, m: u64, n_max: u64) -> CongruenceClaim {
    let sq = p.pow(2 * k);
    related(spec, prog(base * sq, c * sq), prog(base, c), p, k, None, factor, m, n_max)
}

#[allow(clippy::too_many_arguments)]
fn related(
    spec: BiregularSpec,
    lhs: Progression,
    rhs: Progression,
    p: u64,
    k: u32,
    r: Option<u64>,
    factor: i64,
    m: u64,
    n_max: u64,
) -> CongruenceClaim {
    let id = format!("{}.{lhs}~{rhs}.mod{m}", spec_id(spec));
    let kind = ClaimKind::Multiplicative { p, k, r, factor, rhs };
    CongruenceClaim::new(id, spec, lhs, m, kind, n_max).expect("valid built-in claim")
}

fn newman(spec: BiregularSpec, step: u64, shift: u64, hyp_mult: u64, p: u64, k: u32, m: u64, n_max: u64) -> CongruenceClaim {
    let pk = p.pow(2 * k + 1);
    let lhs = prog(step * pk, shift * pk);
    let id = format!("{}.{lhs}.mod{m}.if-{}", spec_id(spec), hyp_mult * p);
    let kind = ClaimKind::NewmanConditional { p, k, hypothesis_index: hyp_mult * p, excluded: prog(step / shift, 1) };
    CongruenceClaim::new(id, spec, lhs, m, kind, n_max).expect("valid built-in claim")
}

fn family(spec: BiregularSpec, shape: FamilyShape, m: u64, primes: &[u64], j: u64, n_max: u64) -> CongruenceClaim {
    instantiate_family(Family { spec, shape, modulus: m }, primes, j, n_max).expect("valid built-in family")
}

fn two_nine() -> Vec<CongruenceClaim> {
    let s = sp(2, 9);
    let mut v = vec![
        vanishing(s, 6, 3, 4, 80),
        vanishing(s, 6, 5, 8, 80),
        series(s, 6, 1, 8, "2f1^4", 2, &[(1, 4)], 80),
    ];
    for j in 1..=4 {
        v.push(family(s, FamilyShape::Six, 8, &[5], j, 25));
    }
    v.push(family(s, FamilyShape::Six, 8, &[11], 1, 25));
    v.push(family(s, FamilyShape::Six, 8, &[5, 11], 1, 3));
    v.extend([
        multiplicative(s, 6, 5, 5, 1, 0, -5, 8, 25),
        multiplicative(s, 6, 5, 5, 2, 0, -5, 8, 25),
        multiplicative(s, 6, 5, 5, 2, 5, -5, 8, 25),
        multiplicative(s, 6, 5, 11, 1, 1, -11, 8, 25),
        iterated(s, 6, 1, 5, 2, 25, 8, 25),
        vanishing(s, 12, 7, 8, 80),
        vanishing(s, 12, 1, 2, 80),
        vanishing(s, 18, 15, 3, 60),
        vanishing(s, 54, 45, 3, 60),
        series(s, 18, 3, 3, "f2^3f3^2/f1^2f6", 1, &[(2, 3), (3, 2), (1, -2), (6, -1)], 60),
        series(s, 18, 9, 3, "f2^2f6^2/f1f3", 1, &[(2, 2), (6, 2), (1, -1), (3, -1)], 60),
        series(s, 18, 3, 3, "f1^4", 1, &[(1, 4)], 60),
        series(s, 18, 3, 3, "f1f3", 1, &[(1, 1), (3, 1)], 60),
    ]);
    v.push(family(s, FamilyShape::Eighteen, 3, &[5], 1, 10));
    for j in 2..=4 {
        v.push(family(s, FamilyShape::Eighteen, 3, &[5], j, 25));
    }
    v.push(family(s, FamilyShape::Eighteen, 3, &[11], 1, 10));
    v.push(family(s, FamilyShape::Eighteen, 3, &[5, 11], 1, 2));
    v.extend([
        multiplicative(s, 18, 15, 5, 1, 0, -5, 3, 25),
        multiplicative(s, 18, 15, 5, 2, 0, -5, 3, 25),
        multiplicative(s, 18, 15, 11, 1, 1, -11, 3, 25),
        iterated(s, 18, 3, 5, 2, 25, 3, 10)
            .with_note("right side taken as B(18n+3); the form B(6n+1) fails at n = 0"),
        newman(s, 18, 3, 3, 7, 0, 3, 25),
        newman(s, 18, 3, 3, 13, 0, 3, 25),
    ]);
    v
}

fn five_two_power(t: u32) -> Vec<CongruenceClaim> {
    let s = sp(5, 2u64.pow(t));
    let m = if t >= 3 { 8 } else { 4 };
    let mut v = Vec::new();
    if t < 3 {
        v.push(vanishing(s, 4, 3, 4, 100));
    }
    v.push(series(s, 4, 1, m, "2f1f5", 2, &[(1, 1), (5, 1)], 80));
    v.push(family(s, FamilyShape::Four, m, &[7], 1, 20));
    for j in 2..=6 {
        v.push(family(s, FamilyShape::Four, m, &[7], j, 20));
    }
    v.push(family(s, FamilyShape::Four, m, &[3], 1, 25));
    v.push(family(s, FamilyShape::Four, m, &[3, 7], 1, 20));
    for (p, r, n_max) in [(3, 0, 40), (7, 1, 40), (11, 2, 40), (19, 4, 20)] {
        v.push(multiplicative(s, 4, 3, p, 1, r, quartic_sign(p).unwrap(), m, n_max));
    }
    v.push(iterated(s, 4, 1, 3, 2, 1, m, 40));
    v.push(iterated(s, 4, 1, 7, 2, 1, m, 10));
    if t >= 3 {
        v.push(newman(s, 4, 1, 1, 13, 0, 8, 40));
        v.push(newman(s, 4, 1, 1, 17, 0, 8, 40));
    }
    v
}

fn eight_three() -> Vec<CongruenceClaim> {
    let s = sp(8, 3);
    vec![vanishing(s, 36, 33, 3, 60), vanishing(s, 4, 3, 3, 60)]
}

fn four_three_power(t: u32) -> Vec<CongruenceClaim> {
    let s = sp(4, 3u64.pow(t));
    vec![
        vanishing(s, 3, 0, 8, 60).starting_at(1),
        vanishing(s, 6, 4, 4, 60),
        vanishing(s, 12, 7, 4, 60),
        series(s, 12, 1, 4, "2f1^2", 2, &[(1, 2)], 60),
        vanishing(s, 3, 2, 4, 60),
    ]
}

fn three_two_power(t: u32) -> Vec<CongruenceClaim> {
    let s = sp(3, 2u64.pow(t));
    vec![
        vanishing(s, 16, 6, 8, 60),
        vanishing(s, 16, 10, 8, 60),
        vanishing(s, 16, 14, 8, 60),
        series(s, 16, 2, 8, "4f1^3", 4, &[(1, 3)], 50),
    ]
}

/// Every built-in claim, in a fixed order.
pub fn builtin_claims() -> Vec<CongruenceClaim> {
    let mut v = two_nine();
    for t in [3, 4, 1, 2] {
        v.extend(five_two_power(t));
    }
    v.extend(eight_three());
    for t in [2, 3] {
        v.extend(four_three_power(t));
    }
    for t in [2, 3] {
        v.extend(three_two_power(t));
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{kronecker, primes_in_class};

    #[test]
    fn family_progressions() {
        let s = sp(2, 9);
        let six = Family { spec: s, shape: FamilyShape::Six, modulus: 8 };
        let c = instantiate_family(six, &[5], 1, 25).unwrap();
        assert_eq!(c.progression, prog(150, 55));
        assert_eq!(instantiate_family(six, &[5, 11], 1, 3).unwrap().progression, prog(18150, 4675));
        let eighteen = Family { spec: s, shape: FamilyShape::Eighteen, modulus: 3 };
        assert_eq!(instantiate_family(eighteen, &[5], 1, 10).unwrap().progression, prog(450, 165));
        let four = Family { spec: sp(5, 8), shape: FamilyShape::Four, modulus: 8 };
        assert_eq!(instantiate_family(four, &[7], 1, 20).unwrap().progression, prog(196, 77));
        assert_eq!(instantiate_family(four, &[7], 3, 20).unwrap().progression, prog(196, 28 * 3 + 49));
    }

    #[test]
    fn family_preconditions() {
        let s = sp(2, 9);
        let six = Family { spec: s, shape: FamilyShape::Six, modulus: 8 };
        assert!(instantiate_family(six, &[7], 1, 5).is_err());
        assert!(instantiate_family(six, &[9], 1, 5).is_err());
        assert!(instantiate_family(six, &[], 1, 5).is_err());
        for p in [5u64, 11] {
            assert!(instantiate_family(six, &[p], 0, 5).is_err());
            assert!(instantiate_family(six, &[p], p, 5).is_err());
            for j in 1..p {
                assert!(instantiate_family(six, &[p], j, 5).is_ok());
            }
        }
        let four = Family { spec: sp(5, 2), shape: FamilyShape::Four, modulus: 4 };
        assert!(instantiate_family(four, &[7], 7, 5).is_err());
        assert!((1..7).all(|j| instantiate_family(four, &[7], j, 5).is_ok()));
        assert!(instantiate_family(four, &[5], 1, 5).is_err());
    }

    #[test]
    fn quartic_sign_is_a_kronecker_symbol() {
        for p in primes_in_class(3, 4, 200).unwrap().into_iter().filter(|&p| p <= 1000) {
            assert_eq!(quartic_sign(p).unwrap(), -(kronecker(-20, p as i64) as i64), "p = {p}");
        }
        assert!(quartic_sign(13).is_err());
    }

    #[test]
    fn catalogue_ids_are_unique() {
        let claims = builtin_claims();
        let mut ids: Vec<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn multiplicative_shapes() {
        let c = multiplicative(sp(2, 9), 6, 5, 5, 1, 0, -5, 8, 25);
        assert_eq!(c.progression, prog(150, 25));
        let c = multiplicative(sp(2, 9), 6, 5, 11, 1, 1, -11, 8, 25);
        assert_eq!(c.progression, prog(726, 121));
        let c = multiplicative(sp(5, 2), 4, 3, 3, 1, 0, -1, 4, 25);
        assert_eq!(c.statement(), "B_{5,2}(36n+9) ≡ -1·B_{5,2}(4n+1) (mod 4)");
        let c = iterated(sp(2, 9), 6, 1, 5, 2, 25, 8, 25);
        assert_eq!(c.progression, prog(3750, 625));
    }
}
