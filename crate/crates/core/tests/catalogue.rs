use std::collections::BTreeSet;

use biregular::claims::{
    builtin_claims, instantiate_family, run_catalogue, search_congruences, verify_claim, ClaimKind, Family,
    FamilyShape, Report, RingChoice, SearchParams, SeriesCache, Status,
};
use biregular::{BiregularSpec, Error};

fn spec(a: u64, b: u64) -> BiregularSpec {
    BiregularSpec::new(a, b).unwrap()
}

#[test]
fn filter_selects_one_pair() {
    let reports = run_catalogue(Some("B_{2,9}"), None, RingChoice::Mod).unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r.paper_ref.contains("B_{2,9}")));
    let all = builtin_claims().iter().filter(|c| c.spec == spec(2, 9)).count();
    assert_eq!(reports.len(), all);
}

#[test]
fn smaller_ranges_keep_passing_claims_green() {
    let full = run_catalogue(Some("B_{2,9}"), None, RingChoice::Mod).unwrap();
    let short = run_catalogue(Some("B_{2,9}"), Some(5), RingChoice::Mod).unwrap();
    assert_eq!(full.len(), short.len());
    for (a, b) in full.iter().zip(&short) {
        assert_eq!(a.id, b.id);
        assert_eq!(a.status, b.status, "{}", a.id);
        assert!(b.range[1] <= 5.max(b.range[0]));
    }
}

#[test]
fn reports_follow_the_schema() {
    let reports = run_catalogue(Some("B_{8,3}"), None, RingChoice::Mod).unwrap();
    let v = serde_json::to_value(Report::new(reports)).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(v["engine"]["max_order"].as_u64().unwrap() >= 20000);
    for c in v["claims"].as_array().unwrap() {
        for key in ["id", "paper_ref", "kind", "params", "status", "range", "millis"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert_eq!(c["status"], "pass");
        assert!(c.get("counterexample").is_none());
    }
}

#[test]
fn failures_carry_a_counterexample() {
    let cache = SeriesCache::new();
    let c = builtin_claims().into_iter().find(|c| c.id == "4-27.3n.mod8").unwrap();
    let r = verify_claim(&c, RingChoice::Exact, &cache).unwrap();
    assert_eq!(r.status, Status::Fail);
    let cex = r.counterexample.unwrap();
    assert_eq!((cex.n, cex.index, cex.value), (3, 9, 106 % 8));
    assert_eq!(r.range, [1, 3]);
}

#[test]
fn skipped_hypotheses_are_reported() {
    let cache = SeriesCache::new();
    let c = builtin_claims().into_iter().find(|c| c.id == "2-9.126n+21.mod3.if-21").unwrap();
    let r = verify_claim(&c, RingChoice::Mod, &cache).unwrap();
    assert_eq!(r.status, Status::SkippedHypothesisFalse);
    assert!(r.note.as_deref().unwrap().contains("B_{2,9}(21)"));
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["status"], "skipped-hypothesis-false");
}

#[test]
fn exact_ring_falls_back_past_the_envelope() {
    let cache = SeriesCache::new();
    let c = builtin_claims().into_iter().find(|c| c.id == "2-9.18150n+4675.mod8").unwrap();
    let r = verify_claim(&c, RingChoice::Exact, &cache).unwrap();
    assert_eq!(r.params["ring"], "mod");
    assert!(r.params.get("ring_fallback").is_some());
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn family_j_range_is_exhaustive() {
    for (shape, m, p) in [(FamilyShape::Six, 8, 5), (FamilyShape::Six, 8, 11), (FamilyShape::Four, 4, 7), (FamilyShape::Four, 4, 11)] {
        let s = if shape == FamilyShape::Six { spec(2, 9) } else { spec(5, 2) };
        let fam = Family { spec: s, shape, modulus: m };
        for j in 0..3 * p {
            let r = instantiate_family(fam, &[p], j, 5);
            assert_eq!(r.is_ok(), j % p != 0, "p = {p}, j = {j}");
        }
    }
    let six = Family { spec: spec(2, 9), shape: FamilyShape::Six, modulus: 8 };
    assert!(matches!(instantiate_family(six, &[7], 1, 5), Err(Error::Precondition(_))));
}

#[test]
fn search_covers_the_catalogue_box() {
    let (a_max, mods) = (12u64, vec![2u64, 3, 4, 8]);
    for s in [spec(2, 9), spec(5, 2), spec(8, 3), spec(3, 4)] {
        let found: BTreeSet<(u64, u64, u64)> = search_congruences(&SearchParams {
            spec: s,
            a_max,
            moduli: mods.clone(),
            n_max: 60,
            min_evidence: 10,
        })
        .unwrap()
        .into_iter()
        .map(|c| (c.a, c.b, c.modulus))
        .collect();
        for c in builtin_claims() {
            let in_box = c.spec == s && c.progression.a <= a_max && mods.contains(&c.modulus) && c.n_min == 0;
            if in_box && matches!(c.kind, ClaimKind::Vanishing) {
                assert!(found.contains(&(c.progression.a, c.progression.b, c.modulus)), "{} missing", c.id);
            }
        }
    }
}
