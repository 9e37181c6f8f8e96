use biregular::etaq::{biregular_gf, overpartition_gf};
use biregular::oracle::{count_biregular, count_overpartitions_explicit, enumerate_overpartitions};
use biregular::{BiregularSpec, Ring};
use num_bigint::BigInt;

fn spec(a: u64, b: u64) -> BiregularSpec {
    BiregularSpec::new(a, b).unwrap()
}

fn coeffs(s: BiregularSpec, order: usize) -> Vec<BigInt> {
    biregular_gf(s, order, Ring::Exact).unwrap().coeffs()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().copied().map(BigInt::from).collect()
}

#[test]
fn small_biregular_values() {
    assert_eq!(coeffs(spec(2, 9), 5), big(&[1, 2, 2, 4, 6, 8]));
    assert_eq!(coeffs(spec(4, 27), 12), big(&[1, 2, 4, 8, 12, 20, 32, 48, 72, 106, 152, 216, 304]));
    assert_eq!(coeffs(spec(5, 8), 9)[9], BigInt::from(122));
}

#[test]
fn large_index_matches_direct_count() {
    let s = spec(5, 32);
    assert_eq!(coeffs(s, 77)[77], BigInt::from(286_830_860));
    assert_eq!(count_biregular(s, 77), BigInt::from(286_830_860));
}

#[test]
fn residues_match_exact_values() {
    let s = spec(2, 9);
    let exact = biregular_gf(s, 600, Ring::Exact).unwrap();
    let modular = biregular_gf(s, 600, Ring::Mod(24)).unwrap();
    assert_eq!(exact.reduce(Ring::Mod(24)).unwrap(), modular);
}

#[test]
fn overpartitions_of_four() {
    assert_eq!(count_overpartitions_explicit(4).unwrap(), 14);
    assert_eq!(overpartition_gf(4, Ring::Exact).unwrap().coeff(4).unwrap(), BigInt::from(14));
    let listed = enumerate_overpartitions(4, |_| true).unwrap();
    assert_eq!(listed.len(), 14);
    assert!(listed.iter().all(|p| p.iter().map(|q| q.size).sum::<u64>() == 4));
}

#[test]
fn explicit_enumeration_respects_the_excluded_parts() {
    let s = spec(2, 9);
    for n in 0..=18 {
        let listed = enumerate_overpartitions(n, |k| s.allows(k)).unwrap();
        assert!(listed.iter().flatten().all(|p| p.size % 2 != 0 && p.size % 9 != 0));
        assert_eq!(BigInt::from(listed.len()), count_biregular(s, n), "n = {n}");
    }
    assert!(enumerate_overpartitions(26, |_| true).is_err());
}
