use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use serde_json::json;

use super::report::{Counterexample, Status, VerificationReport};
use super::{builtin_claims, ClaimKind, CongruenceClaim};
use crate::arith::is_prime;
use crate::dissect::eval_expr;
use crate::error::{Error, Result};
use crate::etaq::{biregular_gf, BiregularSpec};
use crate::series::{QSeries, Ring, MAX_EXACT_ORDER, MAX_MODULAR_ORDER};

const ORDER_GRANULE: usize = 4096;

/// Shared generating-function expansions keyed by spec and ring.
///
/// Orders are rounded up so that nearby requests reuse one expansion.
#[derive(Debug, Default)]
pub struct SeriesCache {
    map: Mutex<HashMap<(BiregularSpec, Ring), Arc<QSeries>>>,
}

impl SeriesCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `B̄` for `spec` in `ring` to at least `order`.
    pub fn get(&self, spec: BiregularSpec, ring: Ring, order: usize) -> Result<Arc<QSeries>> {
        ring.check_order(order)?;
        let key = (spec, ring);
        if let Some(s) = self.map.lock().unwrap().get(&key) {
            if s.order() >= order {
                return Ok(Arc::clone(s));
            }
        }
        let rounded = order.div_ceil(ORDER_GRANULE).max(1) * ORDER_GRANULE;
        let series = Arc::new(biregular_gf(spec, rounded.min(ring.max_order()), ring)?);
        let mut map = self.map.lock().unwrap();
        let entry = map.entry(key).or_insert_with(|| Arc::clone(&series));
        if entry.order() < series.order() {
            *entry = Arc::clone(&series);
        }
        Ok(series)
    }
}

/// Ring in which claim coefficients are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RingChoice {
    Exact,
    #[default]
    Mod,
}

impl RingChoice {
    /// Exact arithmetic falls back to residues past the exact envelope.
    fn ring_for(self, claim: &CongruenceClaim) -> Result<Ring> {
        match self {
            RingChoice::Exact if claim.max_index() as usize <= MAX_EXACT_ORDER => Ok(Ring::Exact),
            _ => Ring::modulo(claim.modulus),
        }
    }
}

impl std::str::FromStr for RingChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RingChoice::Exact),
            "mod" => Ok(RingChoice::Mod),
            _ => Err(Error::Precondition(format!("unknown ring {s:?}, expected exact or mod"))),
        }
    }
}

fn check_hypotheses(claim: &CongruenceClaim) -> Result<()> {
    match &claim.kind {
        ClaimKind::Multiplicative { p, .. } if !is_prime(*p) => Err(Error::NotPrime(*p)),
        ClaimKind::NewmanConditional { p, excluded, .. } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if p % excluded.a != 1 {
                return Err(Error::Precondition(format!("{p} is not 1 mod {}", excluded.a)));
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

struct Scan {
    status: Status,
    last: u64,
    counterexample: Option<Counterexample>,
    note: Option<String>,
}

fn scan(claim: &CongruenceClaim, b: &QSeries) -> Result<Scan> {
    let m = claim.modulus;
    let at = |i: u64| b.residue(i as usize, m);
    let target = match &claim.kind {
        ClaimKind::SeriesCongruence { target } => Some(eval_expr(target, claim.n_max as usize, Ring::modulo(m)?)?),
        _ => None,
    };
    if let ClaimKind::NewmanConditional { hypothesis_index, .. } = &claim.kind {
        let h = at(*hypothesis_index)?;
        if h != 0 {
            return Ok(Scan {
                status: Status::SkippedHypothesisFalse,
                last: claim.n_max,
                counterexample: None,
                note: Some(format!("hypothesis fails: {}({hypothesis_index}) ≡ {h} (mod {m})", claim.spec.label())),
            });
        }
    }
    let mut skipped = 0u64;
    for n in claim.n_min..=claim.n_max {
        let index = claim.progression.at(n);
        let value = at(index)?;
        let expected = match &claim.kind {
            ClaimKind::Vanishing | ClaimKind::FamilyInstance { .. } => 0,
            ClaimKind::SeriesCongruence { .. } => target.as_ref().unwrap().residue(n as usize, m)?,
            ClaimKind::Multiplicative { factor, rhs, .. } => {
                let r = at(rhs.at(n))? as i128 * *factor as i128;
                r.rem_euclid(m as i128) as u64
            }
            ClaimKind::NewmanConditional { p, excluded, .. } => {
                if excluded.at(n) % p == 0 {
                    skipped += 1;
                    continue;
                }
                0
            }
        };
        if value != expected {
            return Ok(Scan {
                status: Status::Fail,
                last: n,
                counterexample: Some(Counterexample { n, index, value, expected }),
                note: None,
            });
        }
    }
    let note = (skipped > 0).then(|| format!("{skipped} values of n excluded by the divisibility condition"));
    Ok(Scan { status: Status::Pass, last: claim.n_max, counterexample: None, note })
}

/// Checks `claim` on its range.
pub fn verify_claim(claim: &CongruenceClaim, ring: RingChoice, cache: &SeriesCache) -> Result<VerificationReport> {
    let start = Instant::now();
    check_hypotheses(claim)?;
    let r = ring.ring_for(claim)?;
    let b = cache.get(claim.spec, r, claim.max_index() as usize)?;
    let out = scan(claim, &b)?;
    let ring_name = match r {
        Ring::Exact => "exact",
        Ring::Mod(_) => "mod",
    };
    let mut params = json!({
        "spec": claim.spec,
        "progression": claim.progression,
        "modulus": claim.modulus,
        "claim": claim.kind,
        "ring": ring_name,
        "finite_range": true,
    });
    if ring == RingChoice::Exact && ring_name == "mod" {
        params["ring_fallback"] = json!("index beyond the exact envelope");
    }
    let note = match (&claim.note, out.note) {
        (Some(a), Some(b)) => Some(format!("{a}; {b}")),
        (a, b) => a.clone().or(b),
    };
    Ok(VerificationReport {
        id: claim.id.clone(),
        paper_ref: claim.statement(),
        kind: claim.kind.name().to_string(),
        params,
        status: out.status,
        range: [claim.n_min, out.last],
        counterexample: out.counterexample,
        millis: start.elapsed().as_millis() as u64,
        note,
    })
}

/// Sets `n_max` to `n`, lowered as needed to stay inside the modular envelope
/// and raised to keep at least one term.
fn clamp_range(c: CongruenceClaim, n: u64) -> CongruenceClaim {
    let lo = c.n_min;
    let mut c = c.with_range(n.max(lo));
    while c.n_max > c.n_min && c.max_index() > MAX_MODULAR_ORDER as u64 {
        c.n_max -= 1;
    }
    c
}

/// Runs the built-in catalogue, optionally filtered and with a common `n_max`.
pub fn run_catalogue(filter: Option<&str>, n_max_override: Option<u64>, ring: RingChoice) -> Result<Vec<VerificationReport>> {
    let claims: Vec<CongruenceClaim> = builtin_claims()
        .into_iter()
        .filter(|c| filter.map_or(true, |f| c.matches(f)))
        .map(|c| match n_max_override {
            Some(n) => clamp_range(c, n),
            None => c,
        })
        .collect();
    let cache = SeriesCache::new();
    let mut need: HashMap<(BiregularSpec, Ring), usize> = HashMap::new();
    for c in &claims {
        let e = need.entry((c.spec, ring.ring_for(c)?)).or_default();
        *e = (*e).max(c.max_index() as usize);
    }
    for ((spec, r), order) in need {
        cache.get(spec, r, order)?;
    }
    claims.iter().map(|c| verify_claim(c, ring, &cache)).collect()
}
