use std::sync::Arc;

use nilblock::exactnum::arith::{is_prime, p_part, valuation};
use nilblock::exactnum::{build_reduction_map, Cyclotomic, CyclotomicField, Rational};
use proptest::prelude::*;

fn element(field: &Arc<CyclotomicField>, coeffs: &[i64]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(field);
    for (k, &c) in coeffs.iter().enumerate() {
        let term = Cyclotomic::root_of_unity(field, k as u64).scale(&Rational::from_int(c));
        acc = &acc + &term;
    }
    acc
}

fn coeffs(e: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, e)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in coeffs(12), b in coeffs(12), c in coeffs(12)) {
        let f = CyclotomicField::new(12);
        let (a, b, c) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a * &b).galois(5), &a.galois(5) * &b.galois(5));
    }

    #[test]
    fn reduction_is_a_ring_homomorphism(a in coeffs(12), b in coeffs(12), p in prop::sample::select(vec![2u64, 3, 5, 7, 13])) {
        let f = CyclotomicField::new(12);
        let r = build_reduction_map(12, p);
        let (a, b) = (element(&f, &a), element(&f, &b));
        let (ra, rb) = (r.reduce(&a).unwrap(), r.reduce(&b).unwrap());
        prop_assert_eq!(r.reduce(&(&a + &b)).unwrap(), &ra + &rb);
        prop_assert_eq!(r.reduce(&(&a * &b)).unwrap(), &ra * &rb);
    }

    #[test]
    fn valuations_by_repeated_division(n in 1u64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut m = n;
        let mut v = 0;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        prop_assert_eq!(valuation(n as i128, p).unwrap(), v);
        prop_assert_eq!(p_part(n, p), p.pow(v));
    }

    #[test]
    fn primality_by_trial_division(n in 0u64..5000) {
        let brute = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), brute);
    }
}

#[test]
fn roots_of_unity_close_up() {
    let f = CyclotomicField::new(15);
    let z = Cyclotomic::root_of_unity(&f, 1);
    let mut acc = Cyclotomic::one(&f);
    let mut sum = Cyclotomic::zero(&f);
    for _ in 0..15 {
        sum = &sum + &acc;
        acc = &acc * &z;
    }
    assert_eq!(acc, Cyclotomic::one(&f));
    assert!(sum.is_zero());
}

#[test]
fn non_integral_values_do_not_reduce() {
    let f = CyclotomicField::new(6);
    let half = Cyclotomic::from_rational(&f, Rational::new(1, 2));
    assert!(build_reduction_map(6, 2).reduce(&half).is_err());
    assert!(build_reduction_map(6, 5).reduce(&half).is_ok());
    // ζ_12 lives outside Q(ζ_6)
    let g = CyclotomicField::new(12);
    assert!(build_reduction_map(6, 5)
        .reduce(&Cyclotomic::root_of_unity(&g, 1))
        .is_err());
}
