use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{canonicalize_poly, factorize, IntPolynomial};
use crate::measure::real::sqrt_bounds;
use crate::measure::RealEnclosure;

/// `a + b√D` in the real quadratic field `ℚ(√D)`, `D >= 2` squarefree.
///
/// Rational elements keep the field they were built in. Binary operations
/// panic when both operands are irrational and live in different fields.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    a: BigRational,
    b: BigRational,
    disc: u64,
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1
        && factorize(&BigInt::from(n))
            .expect("u64 always factors")
            .iter()
            .all(|(_, e)| e == 1)
}

impl QuadElement {
    pub fn new(a: BigRational, b: BigRational, disc: u64) -> Result<Self> {
        if disc < 2 || !is_squarefree(disc) {
            return Err(Error::InvalidArgument(format!("{disc} is not a squarefree integer >= 2")));
        }
        Ok(QuadElement { a, b, disc })
    }

    pub fn from_rational(a: BigRational, disc: u64) -> Result<Self> {
        Self::new(a, BigRational::zero(), disc)
    }

    /// `(u + v√D) / w`.
    pub fn from_ints(u: i64, v: i64, w: i64, disc: u64) -> Result<Self> {
        if w == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let w = BigInt::from(w);
        Self::new(BigRational::new(u.into(), w.clone()), BigRational::new(v.into(), w), disc)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn disc(&self) -> u64 {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn field_with(&self, other: &QuadElement) -> u64 {
        if self.disc == other.disc || other.is_rational() {
            self.disc
        } else if self.is_rational() {
            other.disc
        } else {
            panic!("mixing ℚ(√{}) and ℚ(√{})", self.disc, other.disc)
        }
    }

    fn d(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.disc))
    }

    pub fn add(&self, o: &QuadElement) -> QuadElement {
        let disc = self.field_with(o);
        QuadElement { a: &self.a + &o.a, b: &self.b + &o.b, disc }
    }

    pub fn sub(&self, o: &QuadElement) -> QuadElement {
        let disc = self.field_with(o);
        QuadElement { a: &self.a - &o.a, b: &self.b - &o.b, disc }
    }

    pub fn neg(&self) -> QuadElement {
        QuadElement { a: -&self.a, b: -&self.b, disc: self.disc }
    }

    pub fn mul(&self, o: &QuadElement) -> QuadElement {
        let disc = self.field_with(o);
        let d = BigRational::from_integer(BigInt::from(disc));
        QuadElement {
            a: &self.a * &o.a + d * &self.b * &o.b,
            b: &self.a * &o.b + &self.b * &o.a,
            disc,
        }
    }

    pub fn scale(&self, r: &BigRational) -> QuadElement {
        QuadElement { a: &self.a * r, b: &self.b * r, disc: self.disc }
    }

    /// `a - b√D`.
    pub fn conjugate(&self) -> QuadElement {
        QuadElement { a: self.a.clone(), b: -&self.b, disc: self.disc }
    }

    /// `a² - D b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - self.d() * &self.b * &self.b
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    pub fn recip(&self) -> Result<QuadElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let n = self.norm();
        Ok(QuadElement { a: &self.a / &n, b: -&self.b / &n, disc: self.disc })
    }

    pub fn div(&self, o: &QuadElement) -> Result<QuadElement> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn pow(&self, n: i64) -> Result<QuadElement> {
        let mut base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = QuadElement { a: BigRational::one(), b: BigRational::zero(), disc: self.disc };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Exact sign of the real number `a + b√D`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: the larger of a² and D b² wins
        let a2 = &self.a * &self.a;
        let db2 = self.d() * &self.b * &self.b;
        if a2 > db2 {
            sa
        } else {
            sb
        }
    }

    /// Exact comparison of the real values.
    pub fn cmp_value(&self, other: &QuadElement) -> Ordering {
        self.sub(other).signum()
    }

    pub fn abs(&self) -> QuadElement {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Outward-rounded enclosure of the real value.
    pub fn enclose(&self, bits: u64) -> RealEnclosure {
        let (lo, hi) = sqrt_bounds(&(self.d() * &self.b * &self.b), bits);
        let (lo, hi) = if self.b.is_negative() { (-hi, -lo) } else { (lo, hi) };
        RealEnclosure::new(&self.a + lo, &self.a + hi, bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(64).to_f64()
    }

    /// Integers `(u, v, w)` with `w > 0` and `x = (u + v√D) / w`, `w` minimal.
    pub fn as_ints(&self) -> (BigInt, BigInt, BigInt) {
        let w = self.a.denom().lcm(self.b.denom());
        let scale = BigRational::from_integer(w.clone());
        ((&self.a * &scale).to_integer(), (&self.b * &scale).to_integer(), w)
    }

    /// Minimal polynomial over `ℤ`, primitive with positive leading coefficient.
    pub fn minimal_polynomial(&self) -> Result<IntPolynomial> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.is_rational() {
            return IntPolynomial::linear_for(&self.a);
        }
        let coeffs = [self.norm(), -self.trace(), BigRational::one()];
        let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scale = BigRational::from_integer(lcm);
        let ints = coeffs.iter().map(|c| (c * &scale).to_integer()).collect();
        Ok(canonicalize_poly(&IntPolynomial::new(ints)?))
    }

    /// Evaluates an integer polynomial at this element, exactly.
    pub fn eval(&self, f: &IntPolynomial) -> QuadElement {
        let mut acc = QuadElement { a: BigRational::zero(), b: BigRational::zero(), disc: self.disc };
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.a += BigRational::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for QuadElement {
    /// Prints `(u+v√D)/w` with unit parts elided, e.g. `(1+√5)/2`, `-√5`, `3/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", crate::exact::format_rational(&self.a));
        }
        let (u, v, w) = self.as_ints();
        let mut s = String::new();
        if !u.is_zero() {
            s.push_str(&u.to_string());
            s.push(if v.is_negative() { '-' } else { '+' });
        } else if v.is_negative() {
            s.push('-');
        }
        let v_abs = v.abs();
        if !v_abs.is_one() {
            s.push_str(&v_abs.to_string());
        }
        s.push_str(&format!("√{}", self.disc));
        if w.is_one() {
            write!(f, "{s}")
        } else if u.is_zero() {
            write!(f, "{s}/{w}")
        } else {
            write!(f, "({s})/{w}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_polynomial;
    use crate::exact::rational::{integer, rational};

    fn q(u: i64, v: i64, w: i64, d: u64) -> QuadElement {
        QuadElement::from_ints(u, v, w, d).unwrap()
    }

    #[test]
    fn minimal_polynomials() {
        let p = |s| parse_polynomial(s).unwrap();
        assert_eq!(q(1, 1, 1, 5).minimal_polynomial().unwrap(), p("x^2-2x-4"));
        assert_eq!(q(1, 1, 2, 5).minimal_polynomial().unwrap(), p("x^2-x-1"));
        assert_eq!(q(3, 0, 1, 5).minimal_polynomial().unwrap(), p("x-3"));
        assert_eq!(q(-2, 0, 3, 5).minimal_polynomial().unwrap(), p("3x+2"));
        assert_eq!(q(0, 1, 3, 2).minimal_polynomial().unwrap(), p("9x^2-2"));
        assert!(matches!(q(0, 0, 1, 5).minimal_polynomial(), Err(Error::ZeroElement)));
    }

    #[test]
    fn norms() {
        assert_eq!(q(1, 1, 1, 5).norm(), integer(-4));
        assert_eq!(q(1, 1, 2, 5).norm(), integer(-1));
        assert_eq!(q(3, 0, 1, 5).norm(), integer(9));
    }

    #[test]
    fn field_operations() {
        let x = q(1, 1, 2, 5);
        let phi_sq = x.mul(&x);
        assert_eq!(phi_sq, x.add(&q(1, 0, 1, 5)));
        assert_eq!(x.mul(&x.recip().unwrap()), q(1, 0, 1, 5));
        assert_eq!(x.pow(-2).unwrap().mul(&phi_sq), q(1, 0, 1, 5));
        assert_eq!(q(1, 1, 1, 5).div(&q(2, 0, 1, 5)).unwrap(), x);
        assert!(q(0, 0, 1, 5).recip().is_err());
    }

    #[test]
    fn exact_signs() {
        assert_eq!(q(-2, 1, 1, 5).signum(), Ordering::Greater); // √5 > 2
        assert_eq!(q(3, -1, 1, 5).signum(), Ordering::Greater);
        assert_eq!(q(2, -1, 1, 5).signum(), Ordering::Less);
        assert_eq!(q(0, 0, 1, 5).signum(), Ordering::Equal);
        assert_eq!(q(-1, -1, 1, 2).signum(), Ordering::Less);
        assert_eq!(q(1, 1, 2, 5).cmp_value(&q(8, 0, 5, 5)), Ordering::Greater);
        assert_eq!(q(1, 1, 2, 5).cmp_value(&q(81, 0, 50, 5)), Ordering::Less);
    }

    #[test]
    fn enclosure_and_display() {
        let x = q(1, 1, 2, 5);
        let enc = x.enclose(80);
        assert!((enc.to_f64() - 1.618033988749895).abs() < 1e-15);
        assert!(!enc.contains(&rational(161803398, 100000000)));
        assert_eq!(x.to_string(), "(1+√5)/2");
        assert_eq!(q(0, -1, 1, 5).to_string(), "-√5");
        assert_eq!(q(1, -3, 1, 2).to_string(), "1-3√2");
        assert_eq!(q(0, 1, 3, 2).to_string(), "√2/3");
        assert_eq!(q(3, 0, 4, 2).to_string(), "3/4");
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(QuadElement::from_ints(1, 1, 1, 4).is_err());
        assert!(QuadElement::from_ints(1, 1, 1, 1).is_err());
        assert!(QuadElement::from_ints(1, 1, 0, 5).is_err());
    }
}
