//! Brute-force overpartition counts, independent of any q-series machinery.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::etaq::{biregular_gf, BiregularSpec};
use crate::series::Ring;

/// Largest `n` accepted by the explicit enumerators.
pub const EXPLICIT_CAP: u64 = 25;

/// `B̄(0..=n_max)` for parts accepted by `allowed`.
///
/// Parts are processed one size at a time; a size used with multiplicity
/// `j ≥ 1` contributes a factor 2 for the optional overline on its first
/// occurrence.
pub fn count_table(n_max: u64, allowed: impl Fn(u64) -> bool) -> Vec<BigInt> {
    let n_max = n_max as usize;
    let mut ways = vec![BigInt::zero(); n_max + 1];
    ways[0] = BigInt::from(1);
    for part in (1..=n_max).filter(|&k| allowed(k as u64)) {
        let prev = ways.clone();
        for total in part..=n_max {
            let mut extra = BigInt::zero();
            let mut rest = total;
            while rest >= part {
                rest -= part;
                extra += &prev[rest];
            }
            ways[total] = &prev[total] + extra * 2u32;
        }
    }
    ways
}

/// Number of overpartitions of `n` with no part divisible by either entry of `spec`.
pub fn count_biregular(spec: BiregularSpec, n: u64) -> BigInt {
    count_table(n, |k| spec.allows(k)).swap_remove(n as usize)
}

/// One part of an explicit overpartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Part {
    pub size: u64,
    pub overlined: bool,
}

/// Lists every overpartition of `n` into allowed parts, overlines written out.
///
/// Parts are non-increasing; among equal sizes the overlined copy comes first
/// and occurs at most once.
pub fn enumerate_overpartitions(n: u64, allowed: impl Fn(u64) -> bool) -> Result<Vec<Vec<Part>>> {
    if n > EXPLICIT_CAP {
        return Err(Error::Precondition(format!("explicit enumeration is capped at n = {EXPLICIT_CAP}, got {n}")));
    }
    let symbols: Vec<Part> = (1..=n)
        .rev()
        .filter(|&k| allowed(k))
        .flat_map(|size| [Part { size, overlined: true }, Part { size, overlined: false }])
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(&symbols, 0, n, &mut current, &mut out);
    Ok(out)
}

fn descend(symbols: &[Part], start: usize, rest: u64, current: &mut Vec<Part>, out: &mut Vec<Vec<Part>>) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    for (i, &sym) in symbols.iter().enumerate().skip(start) {
        if sym.size > rest {
            continue;
        }
        current.push(sym);
        let next = if sym.overlined { i + 1 } else { i };
        descend(symbols, next, rest - sym.size, current, out);
        current.pop();
    }
}

/// `p̄(n)` by explicit enumeration; `n ≤ 25`.
pub fn count_overpartitions_explicit(n: u64) -> Result<u64> {
    Ok(enumerate_overpartitions(n, |_| true)?.len() as u64)
}

/// First disagreement between the generating function and the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleMismatch {
    pub n: u64,
    pub series: BigInt,
    pub oracle: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleComparison {
    pub spec: BiregularSpec,
    pub n_max: u64,
    pub mismatch: Option<OracleMismatch>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `biregular_gf(spec)` with [`count_table`] for `n ≤ n_max`.
pub fn compare_series_vs_oracle(spec: BiregularSpec, n_max: u64) -> Result<OracleComparison> {
    let gf = biregular_gf(spec, n_max as usize, Ring::Exact)?;
    let oracle = count_table(n_max, |k| spec.allows(k));
    let mismatch = oracle.into_iter().enumerate().find_map(|(n, want)| {
        let got = gf.coeff(n).expect("within order");
        (got != want).then(|| OracleMismatch { n: n as u64, series: got, oracle: want })
    });
    Ok(OracleComparison { spec, n_max, mismatch })
}
