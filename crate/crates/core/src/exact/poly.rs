use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Nonzero integer polynomial, coefficients lowest degree first with a
/// nonzero last entry. Not necessarily primitive; see [`canonicalize_poly`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `x - root` style linear polynomial `den * x - num` for a rational.
    pub fn linear_for(x: &BigRational) -> Result<Self> {
        Self::new(vec![-x.numer().clone(), x.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Reciprocal polynomial `x^deg f(1/x)`; low-order zero coefficients drop
    /// the degree.
    pub fn reverse(&self) -> IntPolynomial {
        let rev: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        IntPolynomial::new(rev).expect("reversal keeps a nonzero coefficient")
    }

    /// `f(-x)`.
    pub fn negate_variable(&self) -> IntPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        IntPolynomial { coeffs }
    }

    pub fn scale(&self, k: &BigInt) -> Result<IntPolynomial> {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Option<IntPolynomial> {
        let coeffs: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(coeffs).ok()
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs: out }
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + crate::exact::poly::to_f64(c))
    }

    pub(crate) fn to_rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Exact quotient `self / divisor` if it exists in `ℤ[x]`.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = div_rem_q(&self.to_rational_coeffs(), &divisor.to_rational_coeffs());
        if !r.is_empty() || !q.iter().all(|c| c.is_integer()) {
            return None;
        }
        IntPolynomial::new(q.into_iter().map(|c| c.to_integer()).collect()).ok()
    }

    /// True when `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.derivative() {
            None => true,
            Some(d) => gcd_q(&self.to_rational_coeffs(), &d.to_rational_coeffs()).len() <= 1,
        }
    }
}

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

/// Primitive part with positive leading coefficient.
pub fn canonicalize_poly(f: &IntPolynomial) -> IntPolynomial {
    let mut content = f.content();
    if f.leading().is_negative() {
        content = -content;
    }
    IntPolynomial {
        coeffs: f.coeffs.iter().map(|c| c / &content).collect(),
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Division with remainder over ℚ. Empty vectors represent zero.
pub(crate) fn div_rem_q(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let mut den = den.to_vec();
    trim(&mut den);
    assert!(!den.is_empty(), "division by the zero polynomial");
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, d) in den.iter().enumerate() {
            rem[shift + i] -= &factor * d;
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Monic gcd over ℚ.
pub(crate) fn gcd_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = div_rem_q(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::exact::parse::print_polynomial(self))
    }
}
