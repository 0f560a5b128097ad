//! Exhaustive small-measure search over a box of integer polynomials.

use heightkit::exact::{ExactRational, IntPolynomial};
use heightkit::measure::{graeffe_log2_bounds, is_root_of_unity, mahler_measure, RealEnclosure};
use heightkit::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

/// Largest box scanned, counted before symmetry reduction.
pub const MAX_SCAN: u128 = 1 << 26;

/// Root-squaring steps in the screening pass; the bounds pin `M` to within
/// a factor of about `2^{(n + 8) / 4096}` for degree `n <= 10`.
const GRAEFFE_STEPS: u32 = 12;

#[derive(Debug, Clone)]
pub struct ScanResult {
    /// Polynomials in the box with nonzero leading and constant terms.
    pub scanned: u64,
    /// Orbit representatives under reversal, negation and `x → -x`.
    pub distinct: u64,
    /// Representatives whose roots are all roots of unity.
    pub torsion: u64,
    /// Candidates skipped because the root isolation needs squarefree input.
    pub not_squarefree: u64,
    pub best: Option<(IntPolynomial, RealEnclosure)>,
}

/// The eight images of `c` under the measure-preserving symmetries.
fn orbit(c: &[i64]) -> [Vec<i64>; 8] {
    let rev: Vec<i64> = c.iter().rev().copied().collect();
    let alt = |v: &[i64]| -> Vec<i64> {
        v.iter().enumerate().map(|(i, &a)| if i % 2 == 1 { -a } else { a }).collect()
    };
    let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|a| -a).collect() };
    let a = alt(c);
    let ra = alt(&rev);
    [neg(c), neg(&rev), neg(&a), neg(&ra), c.to_vec(), rev, a, ra]
}

fn is_representative(c: &[i64]) -> bool {
    orbit(c).iter().all(|img| c <= img.as_slice())
}

/// Coefficient vectors of degree exactly `degree`, entries in
/// `[-bound, bound]`, nonzero constant term.
fn for_each_in_box(degree: usize, bound: i64, mut visit: impl FnMut(&[i64])) {
    let mut c = vec![-bound; degree + 1];
    loop {
        if c[0] != 0 && c[degree] != 0 {
            visit(&c);
        }
        let mut i = 0;
        loop {
            if i > degree {
                return;
            }
            if c[i] < bound {
                c[i] += 1;
                break;
            }
            c[i] = -bound;
            i += 1;
        }
    }
}

/// Smallest Mahler measure above `1 + epsilon` among polynomials of the
/// given degree with coefficients bounded by `coef_bound`.
///
/// Each orbit is first bracketed by Graeffe bounds. Only orbits whose lower
/// bound does not exceed the least upper bound of a squarefree orbit, and
/// orbits too close to 1 to screen, get certified measures at `tol`, so the
/// result is the certified minimum over squarefree orbits. Ties go to the
/// lexicographically least coefficient vector.
pub fn lehmer_scan(degree: usize, coef_bound: i64, epsilon: &ExactRational, tol: &ExactRational) -> Result<ScanResult> {
    if degree == 0 || coef_bound <= 0 {
        return Err(Error::InvalidArgument("lehmer-scan needs degree >= 1 and coef-bound >= 1".into()));
    }
    if epsilon < &ExactRational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("epsilon must be nonnegative".into()));
    }
    let size = (2 * coef_bound as u128 + 1).checked_pow(degree as u32 + 1);
    if size.is_none_or(|s| s > MAX_SCAN) {
        return Err(Error::InvalidArgument(format!(
            "box of degree {degree} and bound {coef_bound} exceeds {MAX_SCAN} polynomials"
        )));
    }
    let mut scanned = 0u64;
    let mut reps = Vec::new();
    for_each_in_box(degree, coef_bound, |c| {
        scanned += 1;
        if is_representative(c) {
            reps.push(c.to_vec());
        }
    });
    let distinct = reps.len() as u64;
    let threshold = ExactRational::from_integer(1.into()) + epsilon;
    // anything with a Graeffe lower bound above this is certainly above the threshold
    let log_threshold = threshold.to_f64().map_or(f64::INFINITY, f64::log2) + 1e-9;

    enum Screen {
        Torsion,
        Bounded(Vec<i64>, IntPolynomial, f64, f64),
        Uncertain(Vec<i64>, IntPolynomial),
    }
    let screened: Vec<Result<Screen>> = reps
        .into_par_iter()
        .map(|c| {
            let f = IntPolynomial::from_i64(&c)?;
            let (lo, hi) = graeffe_log2_bounds(&f, GRAEFFE_STEPS);
            Ok(if lo > log_threshold {
                Screen::Bounded(c, f, lo, hi)
            } else if is_root_of_unity(&f) {
                Screen::Torsion
            } else {
                Screen::Uncertain(c, f)
            })
        })
        .collect();
    let mut torsion = 0;
    let mut bounded = Vec::new();
    let mut candidates = Vec::new();
    for item in screened {
        match item? {
            Screen::Torsion => torsion += 1,
            Screen::Bounded(c, f, lo, hi) => bounded.push((c, f, lo, hi)),
            Screen::Uncertain(c, f) => candidates.push((c, f)),
        }
    }
    // the least upper bound of a measurable orbit caps the minimum
    bounded.sort_by(|a, b| a.3.total_cmp(&b.3));
    let ceiling = bounded.iter().find(|(_, f, _, _)| f.is_squarefree()).map(|b| b.3);
    candidates.extend(
        bounded
            .into_iter()
            .filter(|(_, _, lo, _)| ceiling.is_none_or(|c| *lo <= c))
            .map(|(c, f, _, _)| (c, f)),
    );

    enum Refined {
        NotSquarefree,
        Below,
        Measured(Vec<i64>, IntPolynomial, RealEnclosure),
    }
    let refined: Vec<Result<Refined>> = candidates
        .into_par_iter()
        .map(|(c, f)| {
            if !f.is_squarefree() {
                return Ok(Refined::NotSquarefree);
            }
            let enc = mahler_measure(&f, tol)?;
            Ok(if enc.lo() > &threshold { Refined::Measured(c, f, enc) } else { Refined::Below })
        })
        .collect();
    let mut not_squarefree = 0;
    let mut best: Option<(Vec<i64>, IntPolynomial, RealEnclosure)> = None;
    for r in refined {
        match r? {
            Refined::NotSquarefree => not_squarefree += 1,
            Refined::Below => {}
            Refined::Measured(c, f, enc) => {
                let better = match &best {
                    None => true,
                    Some((bc, _, be)) => (enc.lo(), &c) < (be.lo(), bc),
                };
                if better {
                    best = Some((c, f, enc));
                }
            }
        }
    }
    // report the orbit member with positive leading coefficient
    let best = match best {
        Some((_, f, e)) if f.leading().is_negative() => Some((f.scale(&BigInt::from(-1))?, e)),
        other => other.map(|(_, f, e)| (f, e)),
    };
    Ok(ScanResult { scanned, distinct, torsion, not_squarefree, best })
}

#[cfg(test)]
mod tests {
    use super::*;
    use heightkit::exact::rational::{pow10_neg, rational};

    #[test]
    fn orbit_representatives() {
        // x^2 - x - 1 and its images: x^2 + x - 1, -x^2 + x + 1, ...
        let mut reps: Vec<Vec<i64>> = orbit(&[-1, -1, 1]).into_iter().filter(|v| is_representative(v)).collect();
        reps.dedup();
        assert_eq!(reps, vec![vec![-1, -1, 1]]);
        let mut count = 0;
        for_each_in_box(2, 1, |_| count += 1);
        assert_eq!(count, 12);
    }

    #[test]
    fn quadratic_scan_finds_golden_ratio() {
        let r = lehmer_scan(2, 1, &pow10_neg(6), &pow10_neg(10)).unwrap();
        let (f, enc) = r.best.unwrap();
        assert_eq!(f.degree(), 2);
        assert!(f.leading().is_positive());
        let (lo, hi) = (rational(1_618_033_988, 1_000_000_000), rational(1_618_033_989, 1_000_000_000));
        assert!(enc.lies_within(&lo, &hi));
        assert_eq!(r.scanned, 12);
    }

    /// Certified measure of every squarefree non-torsion orbit, no screening.
    fn naive_minimum(degree: usize, bound: i64, threshold: &ExactRational) -> ExactRational {
        let mut best: Option<ExactRational> = None;
        for_each_in_box(degree, bound, |c| {
            let f = IntPolynomial::from_i64(c).unwrap();
            if is_root_of_unity(&f) || !f.is_squarefree() {
                return;
            }
            let enc = mahler_measure(&f, &pow10_neg(10)).unwrap();
            if enc.lo() > threshold && best.as_ref().is_none_or(|b| enc.lo() < b) {
                best = Some(enc.lo().clone());
            }
        });
        best.unwrap()
    }

    #[test]
    fn screened_scan_matches_full_scan() {
        let eps = pow10_neg(6);
        let threshold = ExactRational::from_integer(1.into()) + &eps;
        for (degree, bound) in [(3, 2), (4, 1), (5, 1), (6, 1)] {
            let r = lehmer_scan(degree, bound, &eps, &pow10_neg(10)).unwrap();
            let (_, enc) = r.best.unwrap();
            let naive = naive_minimum(degree, bound, &threshold);
            let slack = pow10_neg(10);
            assert!(enc.lo() <= &(&naive + &slack) && &naive <= &(enc.hi() + &slack), "{degree} {bound}: {enc}");
        }
    }
}
