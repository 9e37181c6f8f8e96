use biregular::arith::{is_prime, kronecker};
use biregular::hecke::{apply_tp, HeckeContext};
use biregular::{EtaQuotient, QSeries, Ring};
use num_bigint::BigInt;
use proptest::prelude::*;

fn series(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..50, len)
}

fn exact(c: &[i64]) -> QSeries {
    QSeries::from_i64s(c, Ring::Exact).unwrap()
}

fn same_len(a: &mut Vec<i64>, b: &mut Vec<i64>) {
    let n = a.len().min(b.len());
    a.truncate(n);
    b.truncate(n);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_ring_homomorphism(mut a in series(1..=40), mut b in series(1..=40), m in 2u64..200) {
        same_len(&mut a, &mut b);
        let (x, y) = (exact(&a), exact(&b));
        let r = Ring::Mod(m);
        let (xm, ym) = (x.reduce(r).unwrap(), y.reduce(r).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().reduce(r).unwrap(), xm.mul(&ym).unwrap());
        prop_assert_eq!(x.add(&y).unwrap().reduce(r).unwrap(), xm.add(&ym).unwrap());
        prop_assert_eq!(x.sub(&y).unwrap().reduce(r).unwrap(), xm.sub(&ym).unwrap());
    }

    #[test]
    fn invert_is_two_sided(mut a in series(1..=40), sign in prop::bool::ANY) {
        a[0] = if sign { 1 } else { -1 };
        let x = exact(&a);
        let inv = x.invert().unwrap();
        let one = QSeries::one(x.order(), Ring::Exact);
        prop_assert_eq!(x.mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul(&x).unwrap(), one);
    }

    #[test]
    fn modular_invert_is_two_sided(mut a in series(1..=40), m in 2u64..100) {
        a[0] = 1;
        let x = exact(&a).reduce(Ring::Mod(m)).unwrap();
        let one = QSeries::one(x.order(), Ring::Mod(m));
        prop_assert_eq!(x.mul(&x.invert().unwrap()).unwrap(), one);
    }

    #[test]
    fn extract_then_recombine(a in series(1..=60), k in 1usize..7) {
        let x = exact(&a);
        let mut acc = vec![BigInt::from(0); x.order() + 1];
        for r in 0..k.min(x.order() + 1) {
            let part = x.extract(k, r).unwrap().dilate(k).unwrap().shift(r as i64).unwrap();
            for (n, slot) in acc.iter_mut().enumerate().take(part.order() + 1) {
                *slot += part.coeff(n).unwrap();
            }
        }
        prop_assert_eq!(QSeries::new(acc, Ring::Exact).unwrap(), x);
    }

    #[test]
    fn dilate_spreads_coefficients(a in series(1..=30), k in 1usize..6) {
        let x = exact(&a);
        let d = x.dilate(k).unwrap();
        prop_assert_eq!(d.order(), x.order() * k);
        for n in 0..=d.order() {
            let want = if n % k == 0 { x.coeff(n / k).unwrap() } else { BigInt::from(0) };
            prop_assert_eq!(d.coeff(n).unwrap(), want);
        }
    }

    #[test]
    fn multiplication_is_associative_and_commutative(
        mut a in series(65..=65), mut b in series(65..=65), mut c in series(65..=65)
    ) {
        same_len(&mut a, &mut b);
        same_len(&mut b, &mut c);
        let (x, y, z) = (exact(&a), exact(&b), exact(&c));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn kronecker_is_multiplicative(a in -300i64..300, b in -300i64..300, n in 1i64..300, m in 1i64..300) {
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
    }

    #[test]
    fn kronecker_satisfies_euler(a in -1000i64..1000, p in 3u64..400) {
        prop_assume!(is_prime(p));
        let p = p as i64;
        let r = BigInt::from(a).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
        let want = match r.try_into().unwrap() {
            0i64 => 0,
            1 => 1,
            _ => -1,
        };
        prop_assert_eq!(kronecker(a, p) as i64, want);
    }

    #[test]
    fn hecke_operator_is_linear(
        mut a in series(100..=100), mut b in series(100..=100),
        alpha in -5i64..5, beta in -5i64..5, pi in 0usize..4
    ) {
        same_len(&mut a, &mut b);
        let p = [5u64, 7, 11, 13][pi];
        let eq: EtaQuotient = "6:4".parse().unwrap();
        let ctx = HeckeContext::for_eta(&eq, 36).unwrap();
        let (x, y) = (exact(&a), exact(&b));
        let lhs = apply_tp(&x.scale(alpha).add(&y.scale(beta)).unwrap(), p, &ctx).unwrap();
        let rhs = apply_tp(&x, p, &ctx).unwrap().scale(alpha).add(&apply_tp(&y, p, &ctx).unwrap().scale(beta)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
