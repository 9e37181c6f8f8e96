use biregular::claims::derivations::{derivation_steps, split_steps};
use biregular::claims::SeriesCache;

#[test]
fn every_extraction_step_reproduces() {
    let cache = SeriesCache::new();
    let failures: Vec<String> = derivation_steps()
        .iter()
        .filter_map(|s| {
            let out = s.verify(&cache).unwrap();
            assert!(out.checked_upto >= 30);
            out.failure.map(|f| format!("{} fails at n={}: {} vs {}", s.statement(), f.index, f.lhs, f.rhs))
        })
        .collect();
    assert!(failures.is_empty(), "{} steps fail:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn dissection_splits_are_consistent() {
    for s in split_steps() {
        assert!(s.verify().unwrap().holds(), "{}", s.id);
    }
}

#[test]
fn catalogue_covers_every_pair() {
    let steps = derivation_steps();
    for label in ["B_{2,9}", "B_{5,8}", "B_{5,16}", "B_{5,2}", "B_{5,4}", "B_{8,3}", "B_{4,9}", "B_{4,27}", "B_{3,4}", "B_{3,8}"] {
        assert!(steps.iter().any(|s| s.spec.label() == label), "{label}");
    }
}
