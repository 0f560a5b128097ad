use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::factor::euler_phi;
use super::graeffe::graeffe_log2_bounds;
use crate::exact::{canonicalize_poly, factorize, IntPolynomial};

fn mobius(n: u64) -> i32 {
    let f = factorize(&BigInt::from(n)).expect("positive input");
    if f.iter().any(|(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn x_pow_minus_one(e: usize) -> IntPolynomial {
    let mut c = vec![BigInt::zero(); e + 1];
    c[0] = -BigInt::one();
    c[e] = BigInt::one();
    IntPolynomial::new(c).expect("nonzero")
}

/// `Φ_n = ∏_{d | n} (x^d - 1)^μ(n/d)`.
pub fn cyclotomic_polynomial(n: u64) -> IntPolynomial {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut num = IntPolynomial::from_i64(&[1]).unwrap();
    let mut dens = Vec::new();
    for &d in &divisors {
        match mobius(n / d) {
            1 => num = num.mul(&x_pow_minus_one(d as usize)),
            -1 => dens.push(x_pow_minus_one(d as usize)),
            _ => {}
        }
    }
    for d in dens {
        num = num.exact_div(&d).expect("cyclotomic identity");
    }
    num
}

/// Every `n` with `φ(n) <= degree`. Uses `φ(n) >= sqrt(n/2)`.
fn candidate_orders(degree: usize) -> Vec<u64> {
    let limit = 2 * (degree as u64) * (degree as u64) + 2;
    (1..=limit).filter(|&n| euler_phi(n) <= degree as u64).collect()
}

/// True iff the canonical form of `f` is monic and a product of cyclotomic
/// polynomials, so every root is a root of unity. Constants have no roots and
/// give `false`.
pub fn is_root_of_unity(f: &IntPolynomial) -> bool {
    let mut g = canonicalize_poly(f);
    if g.degree() == 0 || !g.is_monic() {
        return false;
    }
    // a certified M(g) > 1 rules out torsion without any division
    if graeffe_log2_bounds(&g, 8).0 > 0.0 {
        return false;
    }
    for n in candidate_orders(g.degree()) {
        let phi = cyclotomic_polynomial(n);
        while phi.degree() <= g.degree() {
            match g.exact_div(&phi) {
                Some(q) => g = q,
                None => break,
            }
        }
        if g.degree() == 0 {
            break;
        }
    }
    g.degree() == 0 && g.leading().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_polynomial;

    fn p(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), p("x-1"));
        assert_eq!(cyclotomic_polynomial(2), p("x+1"));
        assert_eq!(cyclotomic_polynomial(3), p("x^2+x+1"));
        assert_eq!(cyclotomic_polynomial(4), p("x^2+1"));
        assert_eq!(cyclotomic_polynomial(6), p("x^2-x+1"));
        assert_eq!(cyclotomic_polynomial(12), p("x^4-x^2+1"));
        assert_eq!(cyclotomic_polynomial(15).degree(), 8);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).coeffs().iter().any(|c| c == &BigInt::from(-2)));
    }

    #[test]
    fn examples() {
        assert!(is_root_of_unity(&p("x^2+x+1")));
        assert!(!is_root_of_unity(&p("x^2-x-1")));
        assert!(is_root_of_unity(&p("x-1")));
        assert!(is_root_of_unity(&p("-x-1")));
        assert!(is_root_of_unity(&p("x^4+x^3+x+1"))); // Φ_2^2 Φ_6
        assert!(is_root_of_unity(&p("x^2-2x+1")));
        assert!(is_root_of_unity(&p("2x^2+2x+2")));
        assert!(!is_root_of_unity(&p("2x-1")));
        assert!(!is_root_of_unity(&p("x")));
        assert!(!is_root_of_unity(&p("5")));
        assert!(!is_root_of_unity(&p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")));
    }

    #[test]
    fn orders_cover_degree() {
        let orders = candidate_orders(4);
        assert_eq!(orders, vec![1, 2, 3, 4, 5, 6, 8, 10, 12]);
    }
}
