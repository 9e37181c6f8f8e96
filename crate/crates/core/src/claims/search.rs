use num_integer::Integer;
use serde::Serialize;

use super::{builtin_claims, ClaimKind, SeriesCache};
use crate::error::{Error, Result};
use crate::etaq::BiregularSpec;
use crate::series::{Ring, MAX_MODULAR_ORDER, MAX_MODULUS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub spec: BiregularSpec,
    pub a_max: u64,
    pub moduli: Vec<u64>,
    pub n_max: u64,
    pub min_evidence: u64,
}

/// `B̄(an+b) ≡ 0 (mod m)` observed for every `n ≤ checked_upto`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture {
    pub a: u64,
    pub b: u64,
    pub modulus: u64,
    pub checked_upto: u64,
    /// Catalogue claim that states or implies this congruence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rediscovered: Option<String>,
    /// A coarser progression or larger modulus in the same result implies it.
    pub implied: bool,
}

/// Does `B̄(a'n+b') ≡ 0 (mod m')` imply `B̄(an+b) ≡ 0 (mod m)`?
fn implies((a2, b2, m2): (u64, u64, u64), (a, b, m): (u64, u64, u64)) -> bool {
    a % a2 == 0 && b % a2 == b2 && m2 % m == 0
}

/// Every vanishing congruence in the box `a ≤ a_max`, `b < a`, `m ∈ moduli`
/// that holds for `n ≤ n_max`.
pub fn search_congruences(params: &SearchParams) -> Result<Vec<Conjecture>> {
    if params.moduli.is_empty() {
        return Err(Error::Precondition("no moduli given".into()));
    }
    if let Some(&m) = params.moduli.iter().find(|&&m| m < 2) {
        return Err(Error::InvalidModulus { got: m, max: MAX_MODULUS });
    }
    if params.a_max == 0 {
        return Err(Error::Precondition("a_max must be positive".into()));
    }
    if params.n_max < params.min_evidence {
        return Ok(Vec::new());
    }
    let l = params.moduli.iter().fold(1u64, |acc, &m| acc.lcm(&m));
    let ring = Ring::modulo(l)?;
    let order = params.a_max.saturating_mul(params.n_max + 1);
    if order > MAX_MODULAR_ORDER as u64 {
        return Err(Error::EnvelopeExceeded { requested: order as usize, max: MAX_MODULAR_ORDER, ring });
    }
    let b = SeriesCache::new().get(params.spec, ring, order as usize)?;

    let mut found = Vec::new();
    for a in 1..=params.a_max {
        for r in 0..a {
            let residues: Vec<u64> = (0..=params.n_max).map(|n| b.residue((a * n + r) as usize, l)).collect::<Result<_>>()?;
            for &m in &params.moduli {
                if residues.iter().all(|v| v % m == 0) {
                    found.push((a, r, m));
                }
            }
        }
    }
    let known: Vec<(String, (u64, u64, u64))> = builtin_claims()
        .into_iter()
        .filter(|c| c.spec == params.spec && c.n_min == 0)
        .filter(|c| matches!(c.kind, ClaimKind::Vanishing | ClaimKind::FamilyInstance { .. }))
        .map(|c| (c.id, (c.progression.a, c.progression.b, c.modulus)))
        .collect();
    Ok(found
        .iter()
        .map(|&t| Conjecture {
            a: t.0,
            b: t.1,
            modulus: t.2,
            checked_upto: params.n_max,
            rediscovered: known.iter().find(|(_, k)| implies(*k, t)).map(|(id, _)| id.clone()),
            implied: found.iter().any(|&o| o != t && implies(o, t)),
        })
        .collect())
}
