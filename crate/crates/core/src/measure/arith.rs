use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::real::{exp_bounds, ln_bounds, RealEnclosure};
use crate::error::{Error, Result};
use crate::exact::rational::bits_for;
use crate::exact::{factorize, is_prime_u64, IntPolynomial};

/// `α` is a `p`-adic unit iff `p` divides neither the constant nor the
/// leading coefficient of its minimal polynomial `f`.
pub fn is_p_adic_unit(f: &IntPolynomial, p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if f.constant().is_zero() {
        return Err(Error::ZeroElement);
    }
    let p = BigInt::from(p);
    Ok(!(f.constant() % &p).is_zero() && !(f.leading() % &p).is_zero())
}

/// Largest prime dividing `a_0 · a_n`, or `None` when that product is ±1.
pub fn largest_nonunit_prime(f: &IntPolynomial) -> Result<Option<u64>> {
    if f.constant().is_zero() {
        return Err(Error::ZeroElement);
    }
    let product = (f.constant() * f.leading()).abs();
    Ok(factorize(&product)?.largest_prime())
}

/// Dobrowolski-type lower bound `exp(c (log log d / log d)^3)`, enclosed to
/// width `tol`. Degrees 1 and 2 return exactly 1 since `log log d <= 0` there.
pub fn dobrowolski_lower_bound(d: u64, c: &BigRational, tol: &BigRational) -> Result<RealEnclosure> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if !c.is_positive() || !tol.is_positive() {
        return Err(Error::InvalidArgument("constant and tolerance must be positive".into()));
    }
    if d < 3 {
        return Ok(RealEnclosure::exact(BigRational::one()));
    }
    let mut bits = bits_for(tol) + 16;
    loop {
        let (log_lo, log_hi) = ln_bounds(&BigRational::from_integer(BigInt::from(d)), bits);
        let (loglog_lo, _) = ln_bounds(&log_lo, bits);
        let (_, loglog_hi) = ln_bounds(&log_hi, bits);
        // d >= 3 gives log d > 1, so both logs are positive here
        let loglog_lo = loglog_lo.max(BigRational::zero());
        let ratio_lo = &loglog_lo / &log_hi;
        let ratio_hi = &loglog_hi / &log_lo;
        let exponent_lo = c * &ratio_lo * &ratio_lo * &ratio_lo;
        let exponent_hi = c * &ratio_hi * &ratio_hi * &ratio_hi;
        let (lo, _) = exp_bounds(&exponent_lo, bits);
        let (_, hi) = exp_bounds(&exponent_hi, bits);
        let enc = RealEnclosure::new(lo, hi, bits);
        if &enc.width() <= tol {
            return Ok(enc);
        }
        bits *= 2;
        if bits > super::roots::MAX_PRECISION_BITS {
            return Err(Error::PrecisionExceeded { bits });
        }
    }
}

/// The default implied constant, `1/4`.
pub fn default_dobrowolski_constant() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4))
}
