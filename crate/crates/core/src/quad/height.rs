use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use super::element::QuadElement;
use crate::error::{Error, Result};
use crate::exact::rational::{bits_for, rational_measure};
use crate::measure::real::sqrt_bounds;
use crate::measure::{mahler_measure, RealEnclosure};

fn max_one(x: QuadElement) -> QuadElement {
    if x.cmp_value(&QuadElement::from_rational(BigRational::one(), x.disc()).expect("valid field"))
        == Ordering::Greater
    {
        x
    } else {
        QuadElement::from_rational(BigRational::one(), x.disc()).expect("valid field")
    }
}

/// Exact Mahler measure as an element of the same field:
/// `A · max(1, |x|) · max(1, |x'|)` with `A` the leading coefficient of the
/// minimal polynomial.
pub fn qf_mahler_measure_exact(x: &QuadElement) -> Result<QuadElement> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.is_rational() {
        let m = BigRational::from_integer(rational_measure(x.a()));
        return QuadElement::from_rational(m, x.disc());
    }
    let lead = BigRational::from_integer(x.minimal_polynomial()?.leading().clone());
    Ok(max_one(x.abs()).mul(&max_one(x.conjugate().abs())).scale(&lead))
}

/// `H(x)^2`, exactly. Squaring makes the value field-valued for both
/// rational and quadratic `x`, so heights compare exactly.
pub fn qf_height_squared(x: &QuadElement) -> Result<QuadElement> {
    let m = qf_mahler_measure_exact(x)?;
    Ok(if x.is_rational() { m.mul(&m) } else { m })
}

/// Mahler measure through the certified root engine; rationals take the
/// exact shortcut `max(|num|, |den|)`.
pub fn qf_mahler_measure(x: &QuadElement, tol: &BigRational) -> Result<RealEnclosure> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if x.is_rational() {
        return Ok(RealEnclosure::exact(BigRational::from_integer(rational_measure(x.a()))));
    }
    mahler_measure(&x.minimal_polynomial()?, tol)
}

/// Weil height enclosure from the exact squared height.
pub fn qf_weil_height(x: &QuadElement, tol: &BigRational) -> Result<RealEnclosure> {
    if x.is_rational() {
        return Ok(RealEnclosure::exact(BigRational::from_integer(rational_measure(x.a()))));
    }
    let bits = bits_for(tol) + 4;
    let h2 = qf_height_squared(x)?.enclose(bits + 8);
    let (lo, _) = sqrt_bounds(h2.lo(), bits + 2);
    let (_, hi) = sqrt_bounds(h2.hi(), bits + 2);
    Ok(RealEnclosure::new(lo, hi, bits).rounded(bits))
}

/// A box point `(u + v√D) / w` with its exact squared height.
#[derive(Debug, Clone)]
struct Candidate {
    u: i64,
    v: i64,
    w: i64,
    element: QuadElement,
    h2: QuadElement,
}

impl Candidate {
    /// `(w, |u|, |v|, sign pattern)` with `(+,+) < (+,-) < (-,+) < (-,-)`.
    fn tie_key(&self) -> (i64, u64, u64, u8) {
        let rank = 2 * u8::from(self.u < 0) + u8::from(self.v < 0);
        (self.w, self.u.unsigned_abs(), self.v.unsigned_abs(), rank)
    }

    fn cmp(&self, other: &Candidate) -> Ordering {
        self.h2.cmp_value(&other.h2).then_with(|| self.tie_key().cmp(&other.tie_key()))
    }
}

fn box_candidates(disc: u64, bound: u64, keep: impl Fn(&QuadElement) -> bool + Sync) -> Result<Vec<Candidate>> {
    if bound == 0 {
        return Err(Error::InvalidArgument("bound must be at least 1".into()));
    }
    QuadElement::from_ints(1, 0, 1, disc)?;
    let b = bound as i64;
    let per_w: Vec<Vec<Candidate>> = (1..=b)
        .into_par_iter()
        .map(|w| {
            let mut out = Vec::new();
            for u in -b..=b {
                for v in -b..=b {
                    if u == 0 && v == 0 {
                        continue;
                    }
                    let element = QuadElement::from_ints(u, v, w, disc).expect("valid field");
                    let h2 = qf_height_squared(&element).expect("nonzero");
                    if keep(&h2) {
                        out.push(Candidate { u, v, w, element, h2 });
                    }
                }
            }
            out
        })
        .collect();
    Ok(per_w.into_iter().flatten().collect())
}

/// Element of least Weil height strictly above `1 + tol` among
/// `(u + v√D) / w` with `|u|, |v| <= B` and `1 <= w <= B`.
///
/// This bounds the field infimum from above; the box is not claimed to
/// contain the true minimizer. Ties go to the smallest
/// `(w, |u|, |v|, sign pattern)`.
pub fn qf_enumerate_min_height(disc: u64, bound: u64, tol: &BigRational) -> Result<(QuadElement, RealEnclosure)> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let floor = {
        let t = BigRational::one() + tol;
        QuadElement::from_rational(&t * &t, disc)?
    };
    let candidates = box_candidates(disc, bound, |h2| h2.cmp_value(&floor) == Ordering::Greater)?;
    let best = candidates.into_iter().min_by(|a, b| a.cmp(b)).ok_or(Error::EmptySearch)?;
    let height = qf_weil_height(&best.element, tol)?;
    Ok((best.element, height))
}

/// Distinct box elements with `1 < H <= max_height`, ordered by height and
/// then by the enumeration tie-break.
pub fn qf_box_elements(disc: u64, bound: u64, max_height: &BigRational) -> Result<Vec<QuadElement>> {
    let one = QuadElement::from_rational(BigRational::one(), disc)?;
    let cap = QuadElement::from_rational(max_height * max_height, disc)?;
    let mut candidates = box_candidates(disc, bound, |h2| {
        h2.cmp_value(&one) == Ordering::Greater && h2.cmp_value(&cap) != Ordering::Greater
    })?;
    candidates.sort_by(|a, b| a.cmp(b));
    let mut seen = std::collections::HashSet::new();
    Ok(candidates
        .into_iter()
        .filter(|c| seen.insert(c.element.clone()))
        .map(|c| c.element)
        .collect())
}
