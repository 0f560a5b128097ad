use heightkit::exact::rational::{pow10_neg, rational};
use heightkit::exact::{parse_polynomial, IntPolynomial};
use heightkit::measure::{
    certified_roots, check_irreducible, cyclotomic_polynomial, default_dobrowolski_constant, dobrowolski_lower_bound,
    is_p_adic_unit, is_root_of_unity, largest_nonunit_prime, mahler_measure, measure_from_roots, weil_height,
    Irreducibility, RealEnclosure,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn tol() -> BigRational {
    pow10_neg(12)
}

/// Coefficients lowest degree first, degree in `degrees`, nonzero ends.
fn poly_strategy(degrees: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    degrees
        .prop_flat_map(move |d| prop::collection::vec(-bound..=bound, d + 1))
        .prop_filter("nonzero leading and constant terms", |c| c[0] != 0 && *c.last().unwrap() != 0)
        .prop_map(|c| IntPolynomial::from_i64(&c).unwrap())
}

fn irreducible(degrees: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    poly_strategy(degrees, bound).prop_filter("irreducible", |f| check_irreducible(f) == Irreducibility::Irreducible)
}

fn m(f: &IntPolynomial) -> RealEnclosure {
    mahler_measure(f, &tol()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn reversal_preserves_the_measure(f in irreducible(2..=3, 30)) {
        let a = m(&f);
        let b = m(&f.reverse());
        prop_assert!(a.overlaps(&b), "{a} vs {b}");
        prop_assert!(a.width() <= tol());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nonunit_prime_bounds_the_measure(f in irreducible(1..=6, 40)) {
        if let Some(p) = largest_nonunit_prime(&f).unwrap() {
            let p = BigRational::from_integer(p.into());
            prop_assert!(m(&f).lo() >= &(&p - tol()));
            prop_assert!(!is_p_adic_unit(&f, p.to_integer().try_into().unwrap()).unwrap());
        }
    }

    #[test]
    fn root_product_lands_in_the_enclosure(f in irreducible(1..=8, 10)) {
        let enc = m(&f);
        let boxes = certified_roots(&f, &pow10_neg(20)).unwrap();
        prop_assert_eq!(boxes.len(), f.degree());
        let direct = measure_from_roots(f.leading(), &boxes, 80);
        prop_assert!(direct.overlaps(&enc), "{direct} vs {enc}");
    }

    #[test]
    fn dobrowolski_never_exceeds_the_measure(f in irreducible(1..=10, 3)) {
        prop_assume!(!is_root_of_unity(&f));
        let bound = dobrowolski_lower_bound(f.degree() as u64, &default_dobrowolski_constant(), &tol()).unwrap();
        prop_assert!(bound.lo() <= m(&f).hi());
    }

    #[test]
    fn weil_height_is_the_degree_root(f in irreducible(1..=5, 12)) {
        let h = weil_height(&f, &tol()).unwrap();
        prop_assert!(h.width() <= tol());
        let back = h.powi(f.degree() as u32);
        prop_assert!(back.overlaps(&m(&f)));
    }
}

/// Products of distinct cyclotomic polynomials, total degree at most 10.
fn cyclotomic_products() -> Vec<IntPolynomial> {
    let orders: Vec<u64> = (1..=30).filter(|&n| cyclotomic_polynomial(n).degree() <= 10).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << orders.len().min(12)) {
        let mut f = IntPolynomial::from_i64(&[1]).unwrap();
        for (i, &n) in orders.iter().take(12).enumerate() {
            if mask & (1 << i) != 0 {
                f = f.mul(&cyclotomic_polynomial(n));
            }
        }
        if f.degree() <= 10 {
            out.push(f);
        }
    }
    out
}

#[test]
fn roots_of_unity_have_measure_one() {
    let products = cyclotomic_products();
    assert!(products.len() > 50);
    for f in &products {
        assert!(is_root_of_unity(f), "{f:?}");
        assert!(m(f).contains(&BigRational::one()), "{f:?}");
    }
}

#[test]
fn other_irreducibles_stay_away_from_one() {
    let mut checked = 0;
    for d in 1..=10usize {
        for seed in 0..40i64 {
            // deterministic small-coefficient family
            let c: Vec<i64> = (0..=d as i64).map(|i| ((i * 7 + seed * 13 + i * i * seed) % 5) - 2).collect();
            if c[0] == 0 || c[d] == 0 {
                continue;
            }
            let f = IntPolynomial::from_i64(&c).unwrap();
            if check_irreducible(&f) != Irreducibility::Irreducible || is_root_of_unity(&f) {
                continue;
            }
            assert!(m(&f).lo() > &BigRational::one(), "{c:?}");
            checked += 1;
        }
    }
    assert!(checked > 50, "only {checked} irreducible samples");
}

#[test]
fn high_precision_reference_values() {
    // computed independently with 40-digit arithmetic
    let golden_height = rational(1_272_019_649_514_069, 1_000_000_000_000_000);
    let h = weil_height(&parse_polynomial("x^2-x-1").unwrap(), &tol()).unwrap();
    assert!((h.midpoint() - &golden_height) < pow10_neg(14) && (&golden_height - h.midpoint()) < pow10_neg(14));
    let lehmer = rational(1_176_280_818_259_918, 1_000_000_000_000_000);
    let l = m(&parse_polynomial("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap());
    assert!(l.lies_within(&(&lehmer - pow10_neg(11)), &(&lehmer + pow10_neg(11))));
    let f = parse_polynomial("x^2-2x-4").unwrap();
    assert!(m(&f).contains(&BigRational::from_integer(BigInt::from(4))));
    assert!(weil_height(&f, &tol()).unwrap().contains(&BigRational::from_integer(BigInt::from(2))));
}
