//! Browser bindings: expansion, residue grid and congruence search.

use biregular::claims::{search_congruences, SearchParams};
use biregular::etaq::biregular_gf;
use biregular::{BiregularSpec, Ring};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest order the page will expand.
pub const PAGE_MAX_ORDER: usize = 5000;

fn spec(l1: u32, l2: u32) -> biregular::Result<BiregularSpec> {
    BiregularSpec::new(l1 as u64, l2 as u64)
}

fn ring(modulus: u32) -> biregular::Result<Ring> {
    if modulus == 0 {
        Ok(Ring::Exact)
    } else {
        Ring::modulo(modulus as u64)
    }
}

fn check_order(order: usize) -> biregular::Result<()> {
    if order > PAGE_MAX_ORDER {
        return Err(biregular::Error::Precondition(format!("order {order} exceeds the page limit {PAGE_MAX_ORDER}")));
    }
    Ok(())
}

/// Coefficients `0..=order` as decimal strings. `modulus = 0` means exact.
pub fn expand_json(l1: u32, l2: u32, order: u32, modulus: u32) -> biregular::Result<String> {
    check_order(order as usize)?;
    let b = biregular_gf(spec(l1, l2)?, order as usize, ring(modulus)?)?;
    let coeffs: Vec<String> = b.coeffs().iter().map(|c| c.to_string()).collect();
    Ok(json!({ "label": spec(l1, l2)?.label(), "coeffs": coeffs }).to_string())
}

/// Rows `n = 0..rows`, columns `r = 0..a`, entries `B(an+r) mod m`.
pub fn residue_grid_json(l1: u32, l2: u32, a: u32, modulus: u32, rows: u32) -> biregular::Result<String> {
    if a == 0 || rows == 0 {
        return Err(biregular::Error::Precondition("a and rows must be positive".into()));
    }
    let order = a as usize * rows as usize;
    check_order(order)?;
    let m = modulus as u64;
    if m < 2 {
        return Err(biregular::Error::InvalidModulus { got: m, max: biregular::series::MAX_MODULUS });
    }
    let b = biregular_gf(spec(l1, l2)?, order, ring(modulus)?)?;
    let grid = (0..rows as usize)
        .map(|n| (0..a as usize).map(|r| b.residue(a as usize * n + r, m)).collect::<biregular::Result<Vec<u64>>>())
        .collect::<biregular::Result<Vec<_>>>()?;
    let zero_columns: Vec<usize> = (0..a as usize).filter(|&r| grid.iter().all(|row| row[r] == 0)).collect();
    Ok(json!({ "a": a, "modulus": m, "grid": grid, "zero_columns": zero_columns }).to_string())
}

/// Vanishing congruences with `a ≤ a_max` for the comma separated moduli.
pub fn search_json(l1: u32, l2: u32, a_max: u32, moduli: &str, n_max: u32) -> biregular::Result<String> {
    let moduli = moduli
        .split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| biregular::Error::Precondition(format!("bad modulus `{s}`"))))
        .collect::<biregular::Result<Vec<_>>>()?;
    check_order(a_max as usize * (n_max as usize + 1))?;
    let found = search_congruences(&SearchParams {
        spec: spec(l1, l2)?,
        a_max: a_max as u64,
        moduli,
        n_max: n_max as u64,
        min_evidence: 0,
    })?;
    Ok(serde_json::to_string(&found).expect("conjectures serialize"))
}

fn js<T>(r: biregular::Result<T>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn expand(l1: u32, l2: u32, order: u32, modulus: u32) -> Result<String, JsError> {
    js(expand_json(l1, l2, order, modulus))
}

#[wasm_bindgen]
pub fn residue_grid(l1: u32, l2: u32, a: u32, modulus: u32, rows: u32) -> Result<String, JsError> {
    js(residue_grid_json(l1, l2, a, modulus, rows))
}

#[wasm_bindgen]
pub fn search(l1: u32, l2: u32, a_max: u32, moduli: &str, n_max: u32) -> Result<String, JsError> {
    js(search_json(l1, l2, a_max, moduli, n_max))
}
