use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::real::RealEnclosure;
use super::roots::{certified_roots, RootBox};
use crate::error::{Error, Result};
use crate::exact::rational::bits_for;
use crate::exact::IntPolynomial;

/// Landau's bound `M(f) <= ||f||_2`, rounded up to an integer.
fn landau_bound(f: &IntPolynomial) -> BigInt {
    let sum_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    sum_sq.sqrt() + BigInt::one()
}

/// `|a_n| ∏ max(1, |z|)` over the disks, with outward rounding.
pub fn measure_from_roots(lead: &BigInt, boxes: &[RootBox], bits: u64) -> RealEnclosure {
    let one = BigRational::one();
    let mut lo = BigRational::from_integer(lead.abs());
    let mut hi = lo.clone();
    for b in boxes {
        let (m_lo, m_hi) = b.modulus_bounds(bits + 8);
        if m_lo > one {
            lo *= m_lo;
        }
        if m_hi > one {
            hi *= m_hi;
        }
    }
    RealEnclosure::new(lo, hi, bits).rounded(bits)
}

/// Mahler measure `|a_n| ∏ max(1, |α_i|)` of `f`, enclosed to width `tol`.
///
/// Equals `M(α)` when `f` is the minimal polynomial of `α`; that
/// irreducibility is the caller's responsibility.
pub fn mahler_measure(f: &IntPolynomial, tol: &BigRational) -> Result<RealEnclosure> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if f.degree() == 0 {
        return Ok(RealEnclosure::exact(BigRational::from_integer(f.leading().abs())));
    }
    let n = f.degree() as u64;
    let bound = landau_bound(f);
    let mut root_tol = tol / BigRational::from_integer(BigInt::from(4 * n) * &bound);
    let bits = bits_for(tol) + bound.bits() + 8;
    for _ in 0..8 {
        let boxes = certified_roots(f, &root_tol)?;
        let mut enc = measure_from_roots(f.leading(), &boxes, bits);
        // M(f) >= 1 for every nonzero integer polynomial
        if enc.lo() < &BigRational::one() {
            enc = RealEnclosure::new(BigRational::one(), enc.hi().clone().max(BigRational::one()), bits);
        }
        if &enc.width() <= tol {
            return Ok(enc);
        }
        root_tol /= BigRational::from_integer(BigInt::from(16));
    }
    Err(Error::PrecisionExceeded { bits })
}

/// Weil height `M(f)^(1/deg f)`, enclosed to width `tol`.
pub fn weil_height(f: &IntPolynomial, tol: &BigRational) -> Result<RealEnclosure> {
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("Weil height needs a polynomial of degree >= 1".into()));
    }
    let half = tol / BigRational::from_integer(BigInt::from(2));
    let measure = mahler_measure(f, &half)?;
    let bits = bits_for(tol) + 4;
    Ok(measure.nth_root(f.degree() as u32, bits))
}
