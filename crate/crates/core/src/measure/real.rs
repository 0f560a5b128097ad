//! Rigorous real enclosures with dyadic endpoints.
//!
//! Every operation computes exact rational bounds and then rounds the lower
//! endpoint down and the upper endpoint up onto a `2^-bits` grid.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::rational::{round_down, round_up};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealEnclosure {
    lo: BigRational,
    hi: BigRational,
    precision_bits: u64,
}

impl RealEnclosure {
    pub fn new(lo: BigRational, hi: BigRational, precision_bits: u64) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi");
        RealEnclosure { lo, hi, precision_bits }
    }

    pub fn exact(x: BigRational) -> Self {
        RealEnclosure { lo: x.clone(), hi: x, precision_bits: 0 }
    }

    pub fn one() -> Self {
        Self::exact(BigRational::one())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn precision_bits(&self) -> u64 {
        self.precision_bits
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn overlaps(&self, other: &RealEnclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `[lo, hi] ⊆ [a, b]`.
    pub fn lies_within(&self, a: &BigRational, b: &BigRational) -> bool {
        a <= &self.lo && &self.hi <= b
    }

    fn with_bits(lo: BigRational, hi: BigRational, bits: u64) -> Self {
        RealEnclosure {
            lo: round_down(&lo, bits),
            hi: round_up(&hi, bits),
            precision_bits: bits,
        }
    }

    pub fn add(&self, other: &RealEnclosure) -> RealEnclosure {
        RealEnclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            precision_bits: self.precision_bits.max(other.precision_bits),
        }
    }

    pub fn mul(&self, other: &RealEnclosure) -> RealEnclosure {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        RealEnclosure {
            lo,
            hi,
            precision_bits: self.precision_bits.max(other.precision_bits),
        }
    }

    /// Rounds the endpoints outward to `bits` fractional bits.
    pub fn rounded(&self, bits: u64) -> RealEnclosure {
        Self::with_bits(self.lo.clone(), self.hi.clone(), bits)
    }

    /// Enclosure of `x^(1/n)` for a nonnegative enclosure.
    pub fn nth_root(&self, n: u32, bits: u64) -> RealEnclosure {
        assert!(!self.lo.is_negative(), "root of a negative enclosure");
        let (lo, _) = nth_root_bounds(&self.lo, n, bits);
        let (_, hi) = nth_root_bounds(&self.hi, n, bits);
        RealEnclosure { lo, hi, precision_bits: bits }
    }

    pub fn powi(&self, n: u32) -> RealEnclosure {
        assert!(!self.lo.is_negative());
        RealEnclosure {
            lo: pow(&self.lo, n),
            hi: pow(&self.hi, n),
            precision_bits: self.precision_bits,
        }
    }

    /// Decimal form of `lo` rounded down to `digits` places.
    pub fn lo_decimal(&self, digits: usize) -> String {
        decimal(&self.lo, digits, false)
    }

    /// Decimal form of `hi` rounded up to `digits` places.
    pub fn hi_decimal(&self, digits: usize) -> String {
        decimal(&self.hi, digits, true)
    }

    /// Number of decimal places that resolves the working precision.
    pub fn display_digits(&self) -> usize {
        ((self.precision_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2).clamp(6, 60)
    }
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.display_digits();
        write!(f, "[{}, {}]", self.lo_decimal(d), self.hi_decimal(d))
    }
}

pub(crate) fn pow(x: &BigRational, n: u32) -> BigRational {
    num_traits::pow(x.clone(), n as usize)
}

fn two_pow(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// Decimal string of `x` with `digits` fractional places, rounded toward
/// -∞ or +∞.
pub fn decimal(x: &BigRational, digits: usize, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = x * BigRational::from_integer(scale.clone());
    let n = if round_up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let negative = n.is_negative();
    let mag = n.abs();
    let int_part = &mag / &scale;
    let frac_part = &mag % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
}

/// Floor and ceiling of `sqrt(x)` on the `2^-bits` grid.
pub fn sqrt_bounds(x: &BigRational, bits: u64) -> (BigRational, BigRational) {
    nth_root_bounds(x, 2, bits)
}

/// Floor and ceiling of `x^(1/n)` on the `2^-bits` grid, for `x >= 0`.
pub fn nth_root_bounds(x: &BigRational, n: u32, bits: u64) -> (BigRational, BigRational) {
    assert!(!x.is_negative() && n >= 1);
    let scale = two_pow(bits * n as u64);
    let scaled = x * BigRational::from_integer(scale);
    let floor = scaled.floor().to_integer();
    let ceil = scaled.ceil().to_integer();
    let r_lo = floor.nth_root(n);
    let mut r_hi = ceil.nth_root(n);
    if r_hi.pow(n) < ceil {
        r_hi += 1;
    }
    let den = two_pow(bits);
    (BigRational::new(r_lo, den.clone()), BigRational::new(r_hi, den))
}

/// `2 * atanh(t)` as a partial sum and a bound on the neglected tail, for
/// `|t| <= 1/3`.
fn two_atanh(t: &BigRational, bits: u64) -> (BigRational, BigRational) {
    let t2 = t * t;
    let cutoff = BigRational::new(BigInt::one(), two_pow(bits + 4));
    let mut term = t.clone();
    let mut sum = BigRational::zero();
    let mut j: i64 = 0;
    loop {
        sum += &term / BigRational::from_integer(BigInt::from(2 * j + 1));
        term *= &t2;
        j += 1;
        if term.abs() < cutoff {
            break;
        }
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let tail = &two * term.abs()
        / (BigRational::from_integer(BigInt::from(2 * j + 1)) * (BigRational::one() - &t2));
    (&two * sum, tail)
}

/// Rigorous bounds on `ln x` for rational `x > 0`.
pub fn ln_bounds(x: &BigRational, bits: u64) -> (BigRational, BigRational) {
    assert!(x.is_positive(), "logarithm of a nonpositive number");
    let work = bits + 16;
    // x = 2^k * y with y in [2/3, 4/3]
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut y = shift(x, -k);
    let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
    let four_thirds = BigRational::new(BigInt::from(4), BigInt::from(3));
    while y > four_thirds {
        k += 1;
        y = shift(x, -k);
    }
    while y < two_thirds {
        k -= 1;
        y = shift(x, -k);
    }
    let t = (&y - BigRational::one()) / (&y + BigRational::one());
    let (ln_y, err_y) = two_atanh(&t, work);
    let (mut lo, mut hi) = (&ln_y - &err_y, &ln_y + &err_y);
    if k != 0 {
        let (ln2, err2) = two_atanh(&BigRational::new(BigInt::one(), BigInt::from(3)), work + 8);
        let kk = BigRational::from_integer(BigInt::from(k));
        let (ln2_lo, ln2_hi) = (&ln2 - &err2, &ln2 + &err2);
        if k > 0 {
            lo += &kk * ln2_lo;
            hi += &kk * ln2_hi;
        } else {
            lo += &kk * ln2_hi;
            hi += &kk * ln2_lo;
        }
    }
    (round_down(&lo, bits), round_up(&hi, bits))
}

/// Rigorous bounds on `exp x` for rational `x`.
pub fn exp_bounds(x: &BigRational, bits: u64) -> (BigRational, BigRational) {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut squarings = 0u64;
    let mut z = x.clone();
    while z.abs() > half {
        z /= BigRational::from_integer(BigInt::from(2));
        squarings += 1;
    }
    let work = bits + squarings + 16;
    let cutoff = BigRational::new(BigInt::one(), two_pow(work));
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        sum += &term;
        k += 1;
        term = term * &z / BigRational::from_integer(BigInt::from(k));
        if term.abs() < cutoff {
            break;
        }
    }
    // geometric tail with ratio <= 1/2
    let err = BigRational::from_integer(BigInt::from(2)) * term.abs();
    let mut lo = round_down(&(&sum - &err), work);
    let mut hi = round_up(&(&sum + &err), work);
    for _ in 0..squarings {
        lo = round_down(&(&lo * &lo), work);
        hi = round_up(&(&hi * &hi), work);
    }
    (round_down(&lo, bits), round_up(&hi, bits))
}

fn shift(x: &BigRational, k: i64) -> BigRational {
    if k >= 0 {
        x * BigRational::from_integer(two_pow(k as u64))
    } else {
        x / BigRational::from_integer(two_pow((-k) as u64))
    }
}
