//! Intermediate series produced while proving the catalogue congruences.
//!
//! Each [`DerivationStep`] states that `Σ B̄(an+b) qⁿ` equals (or is
//! congruent to) a sum of eta-quotient monomials. Each [`SplitStep`] states
//! that a dissection expression splits into the listed components.

use serde::Serialize;

use super::{Progression, SeriesCache};
use crate::dissect::{
    eval_expr, first_difference, verify_dissection_consistency, IdentityFailure, IdentityKind, Monomial, SeriesExpr,
};
use crate::error::Result;
use crate::etaq::{factors, BiregularSpec};
use crate::series::Ring;

/// Default number of extracted coefficients compared per step.
pub const STEP_N_MAX: u64 = 45;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivationStep {
    pub id: String,
    pub spec: BiregularSpec,
    pub progression: Progression,
    pub target: SeriesExpr,
    pub kind: IdentityKind,
    pub n_max: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitStep {
    pub id: String,
    pub whole: SeriesExpr,
    pub components: Vec<SeriesExpr>,
    pub kind: IdentityKind,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepOutcome {
    pub id: String,
    pub checked_upto: usize,
    pub failure: Option<IdentityFailure>,
}

impl StepOutcome {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn ring_of(kind: IdentityKind) -> Result<Ring> {
    match kind {
        IdentityKind::Exact => Ok(Ring::Exact),
        IdentityKind::Congruence(m) => Ring::modulo(m),
    }
}

impl DerivationStep {
    pub fn statement(&self) -> String {
        format!("Σ {}({}) q^n = {} ({})", self.spec.label(), self.progression, self.target, self.kind)
    }

    pub fn verify(&self, cache: &SeriesCache) -> Result<StepOutcome> {
        let ring = ring_of(self.kind)?;
        let n_max = self.n_max as usize;
        let b = cache.get(self.spec, ring, self.progression.at(self.n_max) as usize)?;
        let lhs = b.extract(self.progression.a as usize, self.progression.b as usize)?.truncate(n_max)?;
        let rhs = eval_expr(&self.target, n_max, ring)?;
        Ok(StepOutcome { id: self.id.clone(), checked_upto: n_max, failure: first_difference(&lhs, &rhs) })
    }
}

impl SplitStep {
    pub fn verify(&self) -> Result<StepOutcome> {
        let parts = verify_dissection_consistency(&self.whole, self.components.len(), &self.components, self.order, self.kind)?;
        let checked_upto = parts.iter().map(|p| p.order).min().unwrap_or(0);
        let failure = parts.into_iter().find_map(|p| {
            p.failure.map(|f| IdentityFailure { index: f.index * self.components.len() + p.residue, ..f })
        });
        Ok(StepOutcome { id: self.id.clone(), checked_upto, failure })
    }
}

fn mo(c: i64, s: usize, pairs: &[(u64, i64)]) -> Monomial {
    Monomial::from_factors(c, s, factors(pairs))
}

fn with(pairs: &[(u64, i64)], extra: &[(u64, i64)]) -> Vec<(u64, i64)> {
    pairs.iter().chain(extra).copied().collect()
}

fn expr(monos: Vec<Monomial>) -> SeriesExpr {
    if monos.is_empty() {
        SeriesExpr::zero()
    } else {
        SeriesExpr::new(monos).expect("non-empty")
    }
}

#[derive(Default)]
struct Builder {
    steps: Vec<DerivationStep>,
}

impl Builder {
    fn add(&mut self, spec: BiregularSpec, a: u64, b: u64, m: Option<u64>, monos: Vec<Monomial>) -> &mut Self {
        self.add_n(spec, a, b, m, monos, STEP_N_MAX)
    }

    fn add_n(&mut self, spec: BiregularSpec, a: u64, b: u64, m: Option<u64>, monos: Vec<Monomial>, n_max: u64) -> &mut Self {
        let kind = m.map_or(IdentityKind::Exact, IdentityKind::Congruence);
        let progression = Progression { a, b };
        let tag = m.map_or("exact".to_string(), |m| format!("mod{m}"));
        let base = format!("{}-{}.{progression}.{tag}", spec.l1(), spec.l2());
        let seen = self.steps.iter().filter(|s| s.id == base || s.id.starts_with(&format!("{base}#"))).count();
        let id = if seen == 0 { base } else { format!("{base}#{}", seen + 1) };
        self.steps.push(DerivationStep { id, spec, progression, target: expr(monos), kind, n_max });
        self
    }
}

fn sp(a: u64, b: u64) -> BiregularSpec {
    BiregularSpec::new(a, b).expect("valid built-in spec")
}

fn two_nine(bd: &mut Builder) {
    let s = sp(2, 9);
    bd.add(s, 1, 0, None, vec![mo(1, 0, &[(2, 3), (9, 2), (36, 1), (1, -2), (4, -1), (18, -3)])]);
    bd.add(s, 1, 0, None, two_nine_split());
    bd.add(s, 2, 0, None, two_nine_even());
    bd.add(s, 2, 1, None, vec![two_nine_odd_short()]);
    bd.add(s, 2, 1, None, two_nine_odd());
    bd.add(s, 6, 1, None, vec![mo(2, 0, &[(2, 6), (3, 4), (1, -8), (6, -2)])]);
    bd.add(s, 6, 3, None, vec![mo(4, 0, &[(2, 5), (3, 1), (6, 1), (1, -7)])]);
    bd.add(s, 6, 5, None, vec![mo(8, 0, &[(2, 4), (6, 4), (1, -6), (3, -2)])]);
    bd.add(s, 6, 1, Some(8), vec![mo(2, 0, &[(1, 4)])]);
    bd.add(
        s,
        6,
        1,
        None,
        vec![
            mo(2, 0, &[(4, 22), (12, 4), (2, -18), (8, -6), (24, -2)]),
            mo(8, 1, &[(4, 10), (8, 2), (12, 4), (2, -14), (24, -2)]),
            mo(8, 1, &[(4, 19), (6, 1), (12, 1), (2, -17), (8, -4)]),
            mo(32, 2, &[(4, 7), (6, 1), (8, 4), (12, 1), (2, -13)]),
            mo(8, 2, &[(4, 16), (6, 2), (24, 2), (2, -16), (8, -2), (12, -2)]),
            mo(32, 3, &[(4, 4), (6, 2), (8, 6), (24, 2), (2, -12), (12, -2)]),
        ],
    );
    bd.add(
        s,
        12,
        1,
        None,
        vec![
            mo(2, 0, &[(2, 22), (6, 4), (1, -18), (4, -6), (12, -2)]),
            mo(32, 1, &[(2, 7), (3, 1), (4, 4), (6, 1), (1, -13)]),
            mo(8, 1, &[(2, 16), (3, 2), (12, 2), (1, -16), (4, -2), (6, -2)]),
        ],
    );
    bd.add(
        s,
        12,
        7,
        None,
        vec![
            mo(8, 0, &[(2, 10), (4, 2), (6, 4), (1, -14), (12, -2)]),
            mo(8, 0, &[(2, 19), (3, 1), (6, 1), (1, -17), (4, -4)]),
            mo(32, 1, &[(2, 4), (3, 2), (4, 6), (12, 2), (1, -12), (6, -2)]),
        ],
    );
    bd.add(s, 6, 3, Some(3), vec![mo(1, 0, &[(6, 2), (2, 2), (3, -1), (1, -1)])]);
    bd.add(
        s,
        6,
        3,
        Some(3),
        vec![mo(1, 0, &[(6, 3), (9, 2), (3, -2), (18, -1)]), mo(1, 1, &[(6, 2), (18, 2), (3, -1), (9, -1)])],
    );
    bd.add(s, 18, 3, Some(3), vec![mo(1, 0, &[(2, 3), (3, 2), (1, -2), (6, -1)])]);
    bd.add(s, 18, 9, Some(3), vec![mo(1, 0, &[(2, 2), (6, 2), (1, -1), (3, -1)])]);
    bd.add(s, 18, 15, Some(3), vec![]);
    bd.add_n(s, 54, 45, Some(3), vec![], 30);
    bd.add(s, 18, 3, Some(3), vec![mo(1, 0, &[(1, 4)])]);
    bd.add(s, 18, 3, Some(3), vec![mo(1, 0, &[(1, 1), (3, 1)])]);
}

fn two_nine_split() -> Vec<Monomial> {
    vec![
        mo(1, 0, &[(12, 6), (2, -1), (4, -1), (6, -2), (18, -1), (36, -1)]),
        mo(2, 1, &[(4, 1), (12, 2), (36, 1), (2, -2), (18, -2)]),
        mo(1, 2, &[(4, 3), (6, 2), (36, 3), (2, -3), (12, -2), (18, -3)]),
    ]
}

fn two_nine_even() -> Vec<Monomial> {
    vec![
        mo(1, 0, &[(6, 6), (1, -1), (2, -1), (3, -2), (9, -1), (18, -1)]),
        mo(1, 1, &[(2, 3), (3, 2), (18, 3), (1, -3), (6, -2), (9, -3)]),
    ]
}

fn two_nine_odd_short() -> Monomial {
    mo(2, 0, &[(2, 1), (6, 2), (18, 1), (1, -2), (9, -2)])
}

fn two_nine_odd() -> Vec<Monomial> {
    vec![
        mo(2, 0, &[(6, 6), (9, 4), (3, -8), (18, -2)]),
        mo(4, 1, &[(6, 5), (9, 1), (18, 1), (3, -7)]),
        mo(8, 2, &[(6, 4), (18, 4), (3, -6), (9, -2)]),
    ]
}

fn five_two_power(bd: &mut Builder, t: u32) {
    let big = 2u64.pow(t);
    let (h, q) = (big / 2, big / 4);
    let s = sp(5, big);
    bd.add(
        s,
        1,
        0,
        None,
        vec![
            mo(1, 0, &[(big, 2), (10 * big, 1), (8, 2), (20, 4), (2, -3), (10, -1), (2 * big, -1), (5 * big, -2), (40, -2)]),
            mo(2, 1, &[(4, 3), (big, 2), (10 * big, 1), (20, 1), (2, -4), (2 * big, -1), (5 * big, -2)]),
            mo(
                1,
                2,
                &[(4, 6), (10, 1), (big, 2), (10 * big, 1), (40, 2), (2, -5), (2 * big, -1), (8, -2), (5 * big, -2), (20, -2)],
            ),
        ],
    );
    bd.add(
        s,
        2,
        0,
        None,
        vec![
            mo(1, 0, &[(h, 2), (5 * big, 1), (4, 2), (10, 4), (1, -3), (5, -1), (big, -1), (5 * h, -2), (20, -2)]),
            mo(1, 1, &[(2, 6), (5, 1), (h, 2), (5 * big, 1), (20, 2), (1, -5), (big, -1), (4, -2), (5 * h, -2), (10, -2)]),
        ],
    );
    bd.add(s, 2, 1, None, vec![mo(2, 0, &[(2, 3), (h, 2), (5 * big, 1), (10, 1), (1, -4), (big, -1), (5 * h, -2)])]);
    bd.add(
        s,
        4,
        1,
        None,
        vec![mo(2, 0, &[(2, 14), (q, 2), (5 * h, 1), (5, 1), (1, -11), (h, -1), (5 * q, -2), (4, -4)])],
    );
    bd.add(
        s,
        4,
        3,
        None,
        vec![mo(8, 0, &[(2, 2), (5, 1), (q, 2), (5 * h, 1), (4, 4), (1, -7), (h, -1), (5 * q, -2)])],
    );
    bd.add(s, 4, 1, Some(8), vec![mo(2, 0, &[(1, 1), (5, 1)])]);
}

fn five_two(bd: &mut Builder) {
    let s = sp(5, 2);
    bd.add(s, 1, 0, None, vec![mo(1, 0, &[(2, 3), (5, 2), (20, 1), (1, -2), (4, -1), (10, -3)])]);
    bd.add(
        s,
        1,
        0,
        None,
        vec![
            mo(1, 0, &[(8, 2), (20, 5), (2, -1), (4, -1), (10, -3), (40, -2)]),
            mo(2, 1, &[(4, 2), (20, 2), (2, -2), (10, -2)]),
            mo(1, 2, &[(4, 5), (40, 2), (2, -3), (8, -2), (10, -1), (20, -1)]),
        ],
    );
    bd.add(
        s,
        2,
        0,
        None,
        vec![
            mo(1, 0, &[(4, 2), (10, 5), (1, -1), (2, -1), (5, -3), (20, -2)]),
            mo(1, 1, &[(2, 5), (20, 2), (1, -3), (4, -2), (5, -1), (10, -1)]),
        ],
    );
    bd.add(s, 2, 1, None, vec![mo(2, 0, &[(2, 2), (10, 2), (1, -2), (5, -2)])]);
    bd.add(s, 2, 1, Some(4), vec![mo(2, 0, &[(2, 1), (10, 1)])]);
    bd.add(s, 4, 1, Some(4), vec![mo(2, 0, &[(1, 1), (5, 1)])]);
    bd.add(s, 4, 3, Some(4), vec![]);
}

fn five_four(bd: &mut Builder) {
    let s = sp(5, 4);
    bd.add(s, 1, 0, None, vec![mo(1, 0, &[(2, 1), (5, 2), (4, 2), (40, 1), (1, -2), (8, -1), (10, -1), (20, -2)])]);
    bd.add(
        s,
        1,
        0,
        None,
        vec![
            mo(1, 0, &[(4, 2), (8, 1), (20, 2), (2, -3), (10, -1), (40, -1)]),
            mo(2, 1, &[(4, 5), (40, 1), (2, -4), (8, -1), (20, -1)]),
            mo(1, 2, &[(4, 8), (10, 1), (40, 3), (2, -5), (8, -3), (20, -4)]),
        ],
    );
    bd.add(
        s,
        2,
        0,
        None,
        vec![
            mo(1, 0, &[(2, 2), (4, 1), (10, 2), (1, -3), (5, -1), (20, -1)]),
            mo(1, 1, &[(2, 8), (5, 1), (20, 3), (1, -5), (4, -3), (10, -4)]),
        ],
    );
    bd.add(s, 2, 1, None, vec![mo(2, 0, &[(2, 5), (20, 1), (1, -4), (4, -1), (10, -1)])]);
    bd.add(s, 2, 1, Some(4), vec![mo(2, 0, &[(2, 3), (20, 1), (4, -1), (10, -1)])]);
    bd.add(s, 2, 1, Some(4), vec![mo(2, 0, &[(2, 1), (10, 1)])]);
    bd.add(s, 4, 3, Some(4), vec![]);
    bd.add(s, 4, 1, Some(4), vec![mo(2, 0, &[(1, 1), (5, 1)])]);
}

fn eight_three(bd: &mut Builder) {
    let s = sp(8, 3);
    bd.add(s, 1, 0, None, vec![mo(1, 0, &[(2, 1), (3, 2), (8, 2), (48, 1), (1, -2), (6, -1), (16, -1), (24, -2)])]);
    bd.add(
        s,
        1,
        0,
        None,
        vec![
            mo(1, 0, &[(4, 4), (8, 1), (12, 2), (48, 1), (2, -4), (16, -1), (24, -3)]),
            mo(2, 1, &[(4, 1), (6, 1), (8, 3), (48, 1), (2, -3), (12, -1), (16, -1), (24, -1)]),
        ],
    );
    bd.add(s, 2, 0, None, vec![mo(1, 0, &[(2, 4), (4, 1), (6, 2), (24, 1), (1, -4), (8, -1), (12, -3)])]);
    bd.add(s, 2, 1, None, vec![mo(2, 0, &[(2, 1), (3, 1), (4, 3), (24, 1), (1, -3), (6, -1), (8, -1), (12, -1)])]);
    bd.add(s, 2, 1, Some(3), vec![mo(2, 0, &[(2, -2), (3, 1), (8, 2), (1, -3)])]);
    bd.add(s, 2, 1, Some(3), vec![mo(2, 0, &[(8, 2), (2, -2)])]);
    bd.add(s, 4, 1, Some(3), vec![mo(2, 0, &[(4, 2), (1, -2)])]);
    bd.add(s, 4, 3, Some(3), vec![]);
    bd.add(s, 4, 1, Some(3), vec![mo(2, 0, &[(12, 1), (3, -1), (1, 1), (4, -1)])]);
    bd.add(s, 4, 1, Some(3), eight_three_quarter());
    bd.add(s, 12, 1, Some(3), eight_three_twelfths()[0].clone());
    bd.add(s, 12, 5, Some(3), eight_three_twelfths()[1].clone());
    bd.add(s, 12, 9, Some(3), eight_three_twelfths()[2].clone());
    bd.add(s, 12, 9, Some(3), vec![mo(1, 0, &[(2, 2), (3, 1), (12, 2), (1, -1), (6, -2)])]);
    bd.add(
        s,
        12,
        9,
        Some(3),
        vec![mo(1, 0, &[(9, 2), (12, 2), (6, -1), (18, -1)]), mo(1, 1, &[(3, 1), (12, 2), (18, 2), (6, -2), (9, -1)])],
    );
    bd.add(s, 36, 9, Some(3), vec![mo(1, 0, &[(3, 2), (4, 2), (2, -1), (6, -1)])]);
    bd.add(s, 36, 21, Some(3), vec![mo(1, 0, &[(1, 1), (4, 2), (6, 2), (2, -2), (3, -1)])]);
    bd.add(s, 36, 33, Some(3), vec![]);
}

fn eight_three_quarter() -> Vec<Monomial> {
    vec![
        mo(2, 0, &[(6, 1), (9, 1), (18, 1), (3, -1), (12, -2)]),
        mo(-2, 1, &[(18, 4), (9, -2), (12, -2)]),
        mo(-2, 2, &[(6, 2), (9, 1), (36, 3), (3, -1), (12, -3), (18, -2)]),
    ]
}

fn eight_three_twelfths() -> [Vec<Monomial>; 3] {
    [
        vec![mo(2, 0, &[(2, 1), (3, 1), (6, 1), (1, -1), (4, -2)])],
        vec![mo(1, 0, &[(6, 4), (3, -2), (4, -2)])],
        vec![mo(1, 0, &[(2, 2), (3, 1), (12, 3), (1, -1), (4, -3), (6, -2)])],
    ]
}

fn four_three_power(bd: &mut Builder, t: u32) {
    let big = 3u64.pow(t);
    let u = big / 3;
    let com = [(u, 2), (8 * u, 1), (2 * u, -1), (4 * u, -2)];
    let s = sp(4, big);
    bd.add(
        s,
        1,
        0,
        None,
        vec![mo(1, 0, &[(2, 1), (4, 2), (big, 2), (8 * big, 1), (1, -2), (8, -1), (2 * big, -1), (4 * big, -2)])],
    );
    bd.add(
        s,
        3,
        0,
        None,
        vec![
            mo(1, 0, &with(&[(2, 4), (3, 6), (12, 2), (1, -8), (6, -3), (24, -1)], &com)),
            mo(-8, 2, &with(&[(2, 2), (4, 1), (6, 3), (24, 2), (1, -6), (8, -1), (12, -1)], &com)),
        ],
    );
    bd.add(
        s,
        3,
        1,
        None,
        vec![
            mo(2, 0, &with(&[(2, 3), (3, 3), (12, 2), (1, -7), (24, -1)], &com)),
            mo(-2, 1, &with(&[(2, 4), (3, 6), (4, 1), (24, 2), (1, -8), (6, -3), (8, -1), (12, -1)], &com)),
        ],
    );
    bd.add(
        s,
        3,
        2,
        None,
        vec![
            mo(4, 0, &with(&[(2, 2), (6, 3), (12, 2), (1, -6), (24, -1)], &com)),
            mo(-4, 1, &with(&[(2, 3), (3, 3), (4, 1), (24, 2), (1, -7), (8, -1), (12, -1)], &com)),
        ],
    );
    bd.add(s, 3, 2, Some(4), vec![]);
    bd.add(s, 3, 0, Some(8), vec![mo(1, 0, &[])]);
    bd.add(s, 3, 1, Some(4), vec![mo(2, 0, &[(3, 3), (1, -1)]), mo(-2, 1, &[(12, 3), (4, -1)])]);
    bd.add(s, 3, 1, Some(4), vec![mo(2, 0, &[(4, 3), (6, 2), (2, -2), (12, -1)])]);
    bd.add(s, 3, 1, Some(4), vec![mo(2, 0, &[(4, 2)])]);
    bd.add(s, 6, 4, Some(4), vec![]);
    bd.add(s, 6, 1, Some(4), vec![mo(2, 0, &[(2, 2)])]);
    bd.add(s, 12, 7, Some(4), vec![]);
    bd.add(s, 12, 1, Some(4), vec![mo(2, 0, &[(1, 2)])]);
}

fn three_two_power(bd: &mut Builder, t: u32) {
    let big = 2u64.pow(t);
    let (h, q) = (big / 2, big / 4);
    let s = sp(3, big);
    bd.add(
        s,
        1,
        0,
        None,
        vec![mo(1, 0, &[(2, 1), (3, 2), (big, 2), (6 * big, 1), (1, -2), (6, -1), (2 * big, -1), (3 * big, -2)])],
    );
    bd.add(
        s,
        1,
        0,
        None,
        vec![
            mo(1, 0, &[(4, 4), (12, 2), (big, 2), (6 * big, 1), (2, -4), (8, -1), (24, -1), (2 * big, -1), (3 * big, -2)]),
            mo(
                2,
                1,
                &[(4, 1), (6, 1), (8, 1), (24, 1), (big, 2), (6 * big, 1), (2, -3), (12, -1), (2 * big, -1), (3 * big, -2)],
            ),
        ],
    );
    bd.add(
        s,
        2,
        0,
        None,
        vec![mo(1, 0, &[(2, 4), (6, 2), (h, 2), (3 * big, 1), (1, -4), (4, -1), (12, -1), (big, -1), (3 * h, -2)])],
    );
    bd.add(
        s,
        2,
        1,
        None,
        vec![mo(
            2,
            0,
            &[(2, 1), (3, 1), (4, 1), (12, 1), (h, 2), (3 * big, 1), (1, -3), (6, -1), (big, -1), (3 * h, -2)],
        )],
    );
    bd.add(
        s,
        4,
        0,
        None,
        vec![mo(1, 0, &[(2, 13), (3, 2), (q, 2), (3 * h, 1), (1, -10), (4, -4), (6, -1), (h, -1), (3 * q, -2)])],
    );
    bd.add(
        s,
        4,
        2,
        None,
        vec![mo(4, 0, &[(2, 1), (3, 2), (4, 4), (q, 2), (3 * h, 1), (1, -6), (6, -1), (h, -1), (3 * q, -2)])],
    );
    bd.add(s, 4, 2, Some(8), vec![mo(4, 0, &[(4, 3)])]);
    bd.add(s, 16, 2, Some(8), vec![mo(4, 0, &[(1, 3)])]);
    for b in [6, 10, 14] {
        bd.add(s, 16, b, Some(8), vec![]);
    }
}

/// Every extraction step, in a fixed order.
pub fn derivation_steps() -> Vec<DerivationStep> {
    let mut bd = Builder::default();
    two_nine(&mut bd);
    for t in [3, 4] {
        five_two_power(&mut bd, t);
    }
    five_two(&mut bd);
    five_four(&mut bd);
    eight_three(&mut bd);
    for t in [2, 3] {
        four_three_power(&mut bd, t);
    }
    for t in [2, 3] {
        three_two_power(&mut bd, t);
    }
    bd.steps
}

/// Dissection expressions whose components are themselves derivation targets.
pub fn split_steps() -> Vec<SplitStep> {
    let odd: Vec<Monomial> = two_nine_odd();
    let [c1, c5, c9] = eight_three_twelfths();
    vec![
        SplitStep {
            id: "2-9.split2".into(),
            whole: expr(two_nine_split()),
            components: vec![expr(two_nine_even()), expr(vec![two_nine_odd_short()])],
            kind: IdentityKind::Exact,
            order: 120,
        },
        SplitStep {
            id: "2-9.odd.split3".into(),
            whole: expr(odd),
            components: vec![
                expr(vec![mo(2, 0, &[(2, 6), (3, 4), (1, -8), (6, -2)])]),
                expr(vec![mo(4, 0, &[(2, 5), (3, 1), (6, 1), (1, -7)])]),
                expr(vec![mo(8, 0, &[(2, 4), (6, 4), (1, -6), (3, -2)])]),
            ],
            kind: IdentityKind::Exact,
            order: 150,
        },
        SplitStep {
            id: "8-3.4n+1.split3.mod3".into(),
            whole: expr(eight_three_quarter()),
            components: vec![expr(c1), expr(c5), expr(c9)],
            kind: IdentityKind::Congruence(3),
            order: 150,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let steps = derivation_steps();
        let mut ids: Vec<&str> = steps.iter().map(|s| s.id.as_str()).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn splits_hold() {
        for s in split_steps() {
            let out = s.verify().unwrap();
            assert!(out.holds(), "{}: {:?}", s.id, out.failure);
            assert!(out.checked_upto >= 40);
        }
    }

    #[test]
    fn a_step_detects_a_wrong_target() {
        let cache = SeriesCache::new();
        let good = &derivation_steps()[0];
        assert!(good.verify(&cache).unwrap().holds());
        let mut bad = good.clone();
        bad.target.monomials_mut()[0].coeff = 2;
        let out = bad.verify(&cache).unwrap();
        assert_eq!(out.failure.unwrap().index, 0);
    }
}
