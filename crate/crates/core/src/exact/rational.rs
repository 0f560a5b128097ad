use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator. `BigRational` keeps both
/// invariants itself, so this is a plain alias.
pub type ExactRational = BigRational;

pub fn rational(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `10^-k` as an exact rational.
pub fn pow10_neg(k: u32) -> ExactRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(k))
}

/// Parses `"a/b"`, `"a"`, a decimal such as `"0.125"` or a scientific form
/// such as `"1e-12"`. All are converted exactly.
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::syntax(text, 0, "empty rational"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_int(text, num.trim(), 0)?;
        let d = parse_int(text, den.trim(), num.len() + 1)?;
        if d.is_zero() {
            return Err(Error::syntax(text, num.len() + 1, "zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::syntax(text, pos + 1, "bad exponent"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::syntax(text, int_part.len() + 1, "bad fraction digits"));
    }
    let negative = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches(['+', '-']), frac_part);
    if digits.is_empty() {
        return Err(Error::syntax(text, 0, "missing digits"));
    }
    let mut value = BigRational::from_integer(parse_int(text, &digits, 0)?);
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        value *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        value /= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    Ok(if negative { -value } else { value })
}

fn parse_int(full: &str, s: &str, offset: usize) -> Result<BigInt> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if body.is_empty() || !body.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
        return Err(Error::syntax(full, offset, format!("expected an integer, found {s:?}")));
    }
    body.parse()
        .map_err(|_| Error::syntax(full, offset, format!("expected an integer, found {s:?}")))
}

/// Canonical text form: `"a/b"`, or `"a"` for integers.
pub fn format_rational(x: &ExactRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `max(|num|, |den|)`, the Mahler measure (and Weil height) of a nonzero rational.
pub fn rational_measure(x: &ExactRational) -> BigInt {
    let n = x.numer().abs();
    let d = x.denom().clone();
    if n > d {
        n
    } else {
        d
    }
}

/// Floor of `x * 2^bits` divided back by `2^bits`.
pub fn round_down(x: &ExactRational, bits: u64) -> ExactRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).floor();
    BigRational::new(scaled.to_integer(), scale)
}

pub fn round_up(x: &ExactRational, bits: u64) -> ExactRational {
    let scale = BigInt::one() << bits;
    let scaled = (x * BigRational::from_integer(scale.clone())).ceil();
    BigRational::new(scaled.to_integer(), scale)
}

/// Number of bits `b` such that `2^-b <= tol`.
pub fn bits_for(tol: &ExactRational) -> u64 {
    assert!(tol.is_positive());
    let mut bits = 0u64;
    let mut step = BigRational::one();
    while &step > tol {
        step /= BigRational::from_integer(BigInt::from(2));
        bits += 1;
    }
    bits
}
