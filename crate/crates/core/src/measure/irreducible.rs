//! Best-effort irreducibility screening over `ℤ`.
//!
//! A `Reducible` answer always carries a factor confirmed by exact division.
//! `Irreducible` is returned only when every candidate factor was excluded
//! with certified root enclosures. Anything else is `Unknown`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::roots::{certified_roots, RootBox};
use crate::exact::rational::{round_down, round_up};
use crate::exact::{canonicalize_poly, factorize, IntPolynomial, PrimeFactorization};

/// Largest degree for which the root-subset factor search runs.
pub const FACTOR_SEARCH_MAX_DEGREE: usize = 12;

const MAX_DIVISORS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible { factor: IntPolynomial },
    Unknown(String),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Classifies `f` up to content and sign. Logs a warning on `Unknown`.
pub fn check_irreducible(f: &IntPolynomial) -> Irreducibility {
    let result = screen(f);
    if let Irreducibility::Unknown(reason) = &result {
        log::warn!("irreducibility of {f} not decided: {reason}");
    }
    result
}

fn screen(f: &IntPolynomial) -> Irreducibility {
    let g = canonicalize_poly(f);
    let n = g.degree();
    if n == 0 {
        return Irreducibility::Unknown("constant polynomial".into());
    }
    if n == 1 {
        return Irreducibility::Irreducible;
    }
    if g.constant().is_zero() {
        let x = IntPolynomial::from_i64(&[0, 1]).expect("nonzero");
        return Irreducibility::Reducible { factor: x };
    }
    if !g.is_squarefree() {
        return Irreducibility::Reducible { factor: squarefree_witness(&g) };
    }
    if let Some(factor) = rational_root_factor(&g) {
        return Irreducibility::Reducible { factor };
    }
    if n <= 3 {
        // a proper factor of a quadratic or cubic has a linear piece
        return if rational_root_factor_complete(&g) {
            Irreducibility::Irreducible
        } else {
            Irreducibility::Unknown("rational-root candidates not enumerable".into())
        };
    }
    if n > FACTOR_SEARCH_MAX_DEGREE {
        return Irreducibility::Unknown(format!("degree {n} exceeds factor-search limit"));
    }
    root_subset_search(&g)
}

/// Non-constant factor `gcd(g, g')`, scaled to an integer primitive polynomial.
fn squarefree_witness(g: &IntPolynomial) -> IntPolynomial {
    use crate::exact::poly::gcd_q;
    let d = g.derivative().expect("degree >= 1");
    let h = gcd_q(&g.to_rational_coeffs(), &d.to_rational_coeffs());
    let lcm = h.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = h.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    canonicalize_poly(&IntPolynomial::new(ints).expect("gcd is nonzero"))
}

fn positive_divisors(f: &PrimeFactorization) -> Option<Vec<BigInt>> {
    let mut divisors = vec![BigInt::one()];
    for (p, e) in f.iter() {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        if next.len() > MAX_DIVISORS {
            return None;
        }
        divisors = next;
    }
    Some(divisors)
}

fn divisors_of(n: &BigInt) -> Option<Vec<BigInt>> {
    let f = factorize(&n.abs()).ok()?;
    positive_divisors(&f)
}

fn rational_root_factor(g: &IntPolynomial) -> Option<IntPolynomial> {
    let nums = divisors_of(g.constant())?;
    let dens = divisors_of(g.leading())?;
    for q in &dens {
        for p in &nums {
            if p.gcd(q) != BigInt::one() {
                continue;
            }
            for num in [p.clone(), -p] {
                let root = BigRational::new(num.clone(), q.clone());
                if g.eval_rational(&root).is_zero() {
                    return Some(IntPolynomial::new(vec![-num, q.clone()]).expect("nonzero"));
                }
            }
        }
    }
    None
}

fn rational_root_factor_complete(g: &IntPolynomial) -> bool {
    divisors_of(g.constant()).is_some() && divisors_of(g.leading()).is_some()
}

#[derive(Clone)]
struct Complex {
    re: BigRational,
    im: BigRational,
}

/// Certified enclosure of one coefficient: `value ± radius` in each part.
struct CoeffEnclosure {
    re: BigRational,
    im: BigRational,
    radius: BigRational,
}

/// Coefficients of `∏ (x - z_i)` for `z_i` in the disks, as center plus
/// radius. Uses `|e_j(z) - e_j(c)| <= e_j(|c| + r) - e_j(|c|)`.
fn subset_coefficients(boxes: &[&RootBox], bits: u64) -> Vec<CoeffEnclosure> {
    let mut centers = vec![Complex { re: BigRational::one(), im: BigRational::zero() }];
    let mut upper = vec![BigRational::one()];
    let mut base = vec![BigRational::one()];
    for b in boxes {
        let (_, m_hi) = b.modulus_bounds(bits);
        let m_hi = m_hi - &b.radius;
        let shifted = &m_hi + &b.radius;
        let mut next_c = vec![Complex { re: BigRational::zero(), im: BigRational::zero() }; centers.len() + 1];
        let mut next_u = vec![BigRational::zero(); upper.len() + 1];
        let mut next_b = vec![BigRational::zero(); base.len() + 1];
        for (k, c) in centers.iter().enumerate() {
            // multiply by (x - z): coefficient k moves to k+1, and -z c lands at k
            next_c[k + 1].re += &c.re;
            next_c[k + 1].im += &c.im;
            next_c[k].re -= &c.re * &b.center_re - &c.im * &b.center_im;
            next_c[k].im -= &c.re * &b.center_im + &c.im * &b.center_re;
            next_u[k + 1] += &upper[k];
            next_u[k] += &upper[k] * &shifted;
            next_b[k + 1] += &base[k];
            next_b[k] += &base[k] * &m_hi;
        }
        centers = next_c;
        upper = next_u;
        base = next_b;
    }
    centers
        .into_iter()
        .zip(upper.iter().zip(&base))
        .map(|(c, (u, l))| CoeffEnclosure { re: c.re, im: c.im, radius: u - l })
        .collect()
}

enum Rounding {
    Integer(BigInt),
    NotAFactor,
    Ambiguous,
}

fn round_enclosure(value: &BigRational, radius: &BigRational) -> Rounding {
    let lo = (value - radius).ceil().to_integer();
    let hi = (value + radius).floor().to_integer();
    if lo > hi {
        Rounding::NotAFactor
    } else if lo == hi {
        Rounding::Integer(lo)
    } else {
        Rounding::Ambiguous
    }
}

fn root_subset_search(g: &IntPolynomial) -> Irreducibility {
    let Some(leads) = divisors_of(g.leading()) else {
        return Irreducibility::Unknown("leading coefficient not factorable".into());
    };
    let mut tol_bits = 32u64;
    for _ in 0..6 {
        let tol = BigRational::new(BigInt::one(), BigInt::one() << tol_bits);
        let boxes = match certified_roots(g, &tol) {
            Ok(b) => round_boxes(b, tol_bits + 16),
            Err(e) => return Irreducibility::Unknown(format!("root isolation failed: {e}")),
        };
        match scan_subsets(g, &boxes, &leads, tol_bits + 16) {
            Scan::Found(factor) => return Irreducibility::Reducible { factor },
            Scan::Exhausted => return Irreducibility::Irreducible,
            Scan::Ambiguous => {}
        }
        tol_bits *= 2;
    }
    Irreducibility::Unknown("coefficient enclosures stayed ambiguous".into())
}

/// Replaces each center with a short dyadic one, widening the radius to keep
/// the disk covering the same root.
fn round_boxes(boxes: Vec<RootBox>, bits: u64) -> Vec<RootBox> {
    let slack = BigRational::new(BigInt::from(2), BigInt::one() << bits);
    boxes
        .into_iter()
        .map(|b| RootBox {
            center_re: round_down(&b.center_re, bits),
            center_im: round_up(&b.center_im, bits),
            radius: b.radius + &slack,
            multiplicity: b.multiplicity,
        })
        .collect()
}

enum Scan {
    Found(IntPolynomial),
    Exhausted,
    Ambiguous,
}

fn scan_subsets(g: &IntPolynomial, boxes: &[RootBox], leads: &[BigInt], bits: u64) -> Scan {
    let n = boxes.len();
    let mut ambiguous = false;
    for k in 1..=n / 2 {
        for subset in combinations(n, k) {
            let chosen: Vec<&RootBox> = subset.iter().map(|&i| &boxes[i]).collect();
            let coeffs = subset_coefficients(&chosen, bits);
            if coeffs.iter().any(|c| c.im.abs() > c.radius) {
                continue; // not closed under conjugation
            }
            for b in leads {
                let scale = BigRational::from_integer(b.clone());
                let mut ints = Vec::with_capacity(coeffs.len());
                let mut status = Rounding::Integer(BigInt::zero());
                for c in &coeffs {
                    match round_enclosure(&(&c.re * &scale), &(&c.radius * &scale)) {
                        Rounding::Integer(v) => ints.push(v),
                        other => {
                            status = other;
                            break;
                        }
                    }
                }
                match status {
                    Rounding::NotAFactor => continue,
                    Rounding::Ambiguous => {
                        ambiguous = true;
                        continue;
                    }
                    Rounding::Integer(_) => {}
                }
                let candidate = IntPolynomial::new(ints).expect("leading coefficient is b");
                if g.exact_div(&candidate).is_some() {
                    return Scan::Found(canonicalize_poly(&candidate));
                }
            }
        }
    }
    if ambiguous {
        Scan::Ambiguous
    } else {
        Scan::Exhausted
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_polynomial;

    fn p(s: &str) -> IntPolynomial {
        parse_polynomial(s).unwrap()
    }

    fn assert_factor(f: &str) {
        let f = p(f);
        match check_irreducible(&f) {
            Irreducibility::Reducible { factor } => {
                assert!(factor.degree() >= 1 && factor.degree() < f.degree());
                assert!(f.exact_div(&factor).is_some());
            }
            other => panic!("{f}: expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn irreducible_examples() {
        for f in ["x^2-2", "x^2+1", "x^2-x-1", "x^2-2x-4", "x^3-2", "x^4+1", "x^4-10x^2+1", "3x^4+x+1",
            "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1", "7x-15"] {
            assert_eq!(check_irreducible(&p(f)), Irreducibility::Irreducible, "{f}");
        }
    }

    #[test]
    fn reducible_examples() {
        assert_factor("x^2-1");
        assert_factor("x^4+4"); // (x^2+2x+2)(x^2-2x+2)
        assert_factor("x^4-x^2-2x-1"); // (x^2+x+1)(x^2-x-1)
        assert_factor("6x^4+5x^3+3x^2+5x+2");
        assert_factor("x^3-x");
        assert_factor("x^2+2x+1");
        assert_factor("x^6-1");
        assert_factor("4x^4+1"); // (2x^2+2x+1)(2x^2-2x+1)
    }

    #[test]
    fn product_of_irreducible_quartics() {
        let a = p("x^4-10x^2+1");
        let b = p("x^4+x^3+x^2+x+1");
        let f = a.mul(&b);
        assert!(matches!(check_irreducible(&f), Irreducibility::Reducible { .. }));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(12, 6).len(), 924);
        assert_eq!(combinations(4, 2).len(), 6);
    }
}
