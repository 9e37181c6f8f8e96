use thiserror::Error;

use crate::series::Ring;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },

    #[error("modulus must be between 2 and {max}, got {got}")]
    InvalidModulus { got: u64, max: u64 },

    #[error("constant term {constant} is not a unit in {ring}")]
    NonUnitConstant { constant: String, ring: Ring },

    #[error("cannot shift by {shift}: coefficient at q^{index} is nonzero")]
    ShiftPastNonzero { shift: i64, index: usize },

    #[error("order {requested} requested but only {available} is available")]
    OrderExceeded { requested: usize, available: usize },

    #[error("order {requested} exceeds the engine envelope of {max} for {ring}")]
    EnvelopeExceeded { requested: usize, max: usize, ring: Ring },

    #[error("invalid biregular pair ({l1},{l2}): {reason}")]
    InvalidSpec { l1: u64, l2: u64, reason: &'static str },

    #[error("eta-quotient has fractional leading exponent: sum of delta*r_delta is {residue} mod 24")]
    FractionalEtaShift { residue: i64 },

    #[error("invalid eta-quotient: {0}")]
    InvalidEtaQuotient(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
