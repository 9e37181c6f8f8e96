//! Congruence claims about `B̄_{ℓ1,ℓ2}(n)`: the claim model, the built-in
//! catalogue, finite-range verification, search and JSON reports.
//!
//! Every check is finite: a claim "for all n" is verified for
//! `n_min ≤ n ≤ n_max` and the report records that range.

mod catalogue;
pub mod derivations;
mod report;
mod runner;
mod search;

use std::fmt;

use serde::Serialize;

use crate::dissect::SeriesExpr;
use crate::error::{Error, Result};
use crate::etaq::BiregularSpec;

pub use catalogue::{builtin_claims, instantiate_family, quartic_sign, Family, FamilyShape};
pub use report::{Counterexample, EngineInfo, Report, Status, VerificationReport, SCHEMA_VERSION};
pub use runner::{run_catalogue, verify_claim, RingChoice, SeriesCache};
pub use search::{search_congruences, Conjecture, SearchParams};

/// The arithmetic progression `a·n + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Progression {
    pub a: u64,
    pub b: u64,
}

impl Progression {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::Precondition("progression step must be positive".into()));
        }
        Ok(Progression { a, b })
    }

    pub fn at(&self, n: u64) -> u64 {
        self.a * n + self.b
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (1, 0) => write!(f, "n"),
            (1, b) => write!(f, "n+{b}"),
            (a, 0) => write!(f, "{a}n"),
            (a, b) => write!(f, "{a}n+{b}"),
        }
    }
}

/// What a claim asserts about `B̄(a·n + b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClaimKind {
    /// `B̄(an+b) ≡ 0 (mod m)`.
    Vanishing,
    /// `Σ B̄(an+b) qⁿ ≡ target (mod m)`.
    SeriesCongruence { target: SeriesExpr },
    /// `B̄(an+b) ≡ factor · B̄(rhs(n)) (mod m)`.
    Multiplicative { p: u64, k: u32, r: Option<u64>, factor: i64, rhs: Progression },
    /// A concrete member of a parametrized family of vanishing congruences.
    FamilyInstance { family: Family, primes: Vec<u64>, j: u64 },
    /// If `B̄(hypothesis_index) ≡ 0 (mod m)` then `B̄(an+b) ≡ 0 (mod m)`
    /// for every `n` with `p ∤ excluded(n)`.
    NewmanConditional { p: u64, k: u32, hypothesis_index: u64, excluded: Progression },
}

impl ClaimKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClaimKind::Vanishing => "vanishing",
            ClaimKind::SeriesCongruence { .. } => "series_congruence",
            ClaimKind::Multiplicative { .. } => "multiplicative",
            ClaimKind::FamilyInstance { .. } => "family_instance",
            ClaimKind::NewmanConditional { .. } => "newman_conditional",
        }
    }
}

/// A congruence with its verification range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceClaim {
    pub id: String,
    pub spec: BiregularSpec,
    pub progression: Progression,
    pub modulus: u64,
    pub kind: ClaimKind,
    pub n_min: u64,
    pub n_max: u64,
    pub note: Option<String>,
}

impl CongruenceClaim {
    pub fn new(
        id: impl Into<String>,
        spec: BiregularSpec,
        progression: Progression,
        modulus: u64,
        kind: ClaimKind,
        n_max: u64,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidModulus { got: modulus, max: crate::series::MAX_MODULUS });
        }
        Ok(CongruenceClaim { id: id.into(), spec, progression, modulus, kind, n_min: 0, n_max, note: None })
    }

    pub fn starting_at(mut self, n_min: u64) -> Self {
        self.n_min = n_min;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_range(mut self, n_max: u64) -> Self {
        self.n_max = n_max;
        self
    }

    /// Largest coefficient index the verification reads.
    pub fn max_index(&self) -> u64 {
        let main = self.progression.at(self.n_max);
        match &self.kind {
            ClaimKind::Multiplicative { rhs, .. } => main.max(rhs.at(self.n_max)),
            ClaimKind::NewmanConditional { hypothesis_index, .. } => main.max(*hypothesis_index),
            _ => main,
        }
    }

    /// The congruence written out, e.g. `B_{2,9}(6n+3) ≡ 0 (mod 4)`.
    pub fn statement(&self) -> String {
        let b = self.spec.label();
        let prog = self.progression;
        let m = self.modulus;
        let tail = if self.n_min > 0 { format!(" for n ≥ {}", self.n_min) } else { String::new() };
        match &self.kind {
            ClaimKind::Vanishing | ClaimKind::FamilyInstance { .. } => format!("{b}({prog}) ≡ 0 (mod {m}){tail}"),
            ClaimKind::SeriesCongruence { target } => format!("Σ {b}({prog}) q^n ≡ {target} (mod {m})"),
            ClaimKind::Multiplicative { factor, rhs, .. } => format!("{b}({prog}) ≡ {factor}·{b}({rhs}) (mod {m})"),
            ClaimKind::NewmanConditional { p, hypothesis_index, excluded, .. } => format!(
                "if {b}({hypothesis_index}) ≡ 0 (mod {m}) then {b}({prog}) ≡ 0 (mod {m}) whenever {p} ∤ {excluded}"
            ),
        }
    }

    /// Does `filter` occur in the id, the spec label or the statement?
    pub fn matches(&self, filter: &str) -> bool {
        self.id.contains(filter) || self.spec.label().contains(filter) || self.statement().contains(filter)
    }
}
