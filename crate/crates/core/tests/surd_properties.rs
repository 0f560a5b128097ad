use heightkit::exact::rational::{pow10_neg, rational};
use heightkit::exact::{factorize_rational, IntPolynomial};
use heightkit::measure::{largest_nonunit_prime, mahler_measure};
use heightkit::surd::{surd_from_rational, SurdCoset};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

fn coset() -> impl Strategy<Value = SurdCoset> {
    prop::collection::vec((prop::sample::select(PRIMES.to_vec()), -6i64..=6, 1i64..=12), 0..=4).prop_map(|pairs| {
        SurdCoset::from_exponents(pairs.into_iter().map(|(p, a, b)| (p, rational(a, b)))).unwrap()
    })
}

fn nonzero_exponent() -> impl Strategy<Value = BigRational> {
    prop_oneof![
        prop::sample::select(vec![(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 5), (-7, 4)])
            .prop_map(|(a, b)| rational(a, b)),
        (-9i64..=9, 1i64..=9).prop_filter("nonzero", |(a, _)| *a != 0).prop_map(|(a, b)| rational(a, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn m_infinity_is_power_invariant(x in coset(), r in nonzero_exponent()) {
        prop_assert_eq!(x.pow(&r).unwrap().m_infinity(), x.m_infinity());
    }

    #[test]
    fn strong_triangle_inequality(x in coset(), y in coset()) {
        prop_assert!(x.mul(&y).m_infinity() <= x.m_infinity().max(y.m_infinity()));
    }

    #[test]
    fn ultrametric_on_triples(x in coset(), y in coset(), z in coset()) {
        // d(x, z) = M∞(x z⁻¹)
        let d = |a: &SurdCoset, b: &SurdCoset| a.mul(&b.inverse()).m_infinity();
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
        prop_assert_eq!(d(&x, &x), 1);
    }

    #[test]
    fn m_infinity_vanishes_only_at_identity(x in coset()) {
        prop_assert_eq!(x.m_infinity() == 1, x.is_identity());
        prop_assert!(x.is_canonical());
    }

    #[test]
    fn degree_inequality(x in coset(), r in 1u64..=12) {
        let xr = x.pow(&BigRational::from_integer(r.into())).unwrap();
        prop_assert!(x.degree() <= BigInt::from(r) * xr.degree());
    }

    #[test]
    fn height_power_rule(x in coset(), r in nonzero_exponent()) {
        let lhs = x.pow(&r).unwrap().weil_height();
        let rhs = x.weil_height().pow(&r.abs());
        prop_assert_eq!(lhs.value(), rhs.value());
    }

    #[test]
    fn measure_is_an_integer_above_m_infinity(x in coset()) {
        let m = x.h_to_the_d().to_integer();
        prop_assert!(m.is_some());
        prop_assert!(m.unwrap() >= BigInt::from(x.m_infinity()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rational_height_matches_linear_measure(a in -100_000i64..=100_000, b in 1i64..=100_000) {
        prop_assume!(a != 0);
        let x = rational(a, b);
        let s = surd_from_rational(&x, 1).unwrap();
        let h = s.weil_height().to_integer().unwrap();
        // H(a/b) = max(|a|, |b|) in lowest terms
        let expected = x.numer().abs().max(x.denom().clone());
        prop_assert_eq!(&h, &expected);
        let f = IntPolynomial::linear_for(&x).unwrap();
        let m = mahler_measure(&f, &pow10_neg(12)).unwrap();
        prop_assert!(m.contains(&BigRational::from_integer(h)));
    }

    #[test]
    fn binomial_minimal_polynomial_sandwich(a in 1i64..=10_000, b in 1i64..=10_000, d in 1u64..=6) {
        let x = rational(a, b);
        prop_assume!(x != rational(1, 1));
        let s = surd_from_rational(&x, d).unwrap();
        let radicand = s.radicand();
        let n: usize = s.degree().try_into().unwrap();
        // den·X^N − num vanishes at the surd
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -radicand.numer().clone();
        coeffs[n] = radicand.denom().clone();
        let f = IntPolynomial::new(coeffs).unwrap();
        let p = largest_nonunit_prime(&f).unwrap().unwrap();
        prop_assert_eq!(p, s.m_infinity());
        let largest = factorize_rational(&x).unwrap().largest_prime().unwrap();
        prop_assert_eq!(largest, s.m_infinity());
    }
}

#[test]
fn worked_values() {
    let s = surd_from_rational(&rational(5, 6), 3).unwrap();
    assert_eq!(s.m_infinity(), 5);
    assert_eq!(s.degree(), BigInt::from(3));
    assert_eq!(s.h_to_the_d().to_integer(), Some(BigInt::from(6)));
    let root = surd_from_rational(&rational(2, 1), 16).unwrap();
    let h = root.weil_height().enclose(80);
    assert!(h.lies_within(&rational(1_044_273_782_427, 1_000_000_000_000), &rational(1_044_273_782_428, 1_000_000_000_000)));
    assert!(surd_from_rational(&rational(-1, 1), 7).unwrap().is_identity());
}
