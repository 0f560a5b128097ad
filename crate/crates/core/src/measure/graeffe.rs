//! Cheap rigorous bounds on the Mahler measure by root squaring.
//!
//! The Graeffe transform `g(x²) = ±f(x) f(-x)` squares every root, so
//! `M(g) = M(f)²`. After `k` steps the coefficients `c_j` of `g_k` satisfy
//! `|c_j| <= C(n, j) M(g_k)` and `M(g_k) <= ||g_k||₂`, which pins
//! `log₂ M(f)` to within `log₂(C(n, j) ||·||-slack) / 2^k`.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::exact::IntPolynomial;

/// Absolute slack added to every floating `log₂`, far above its rounding error.
const LOG_MARGIN: f64 = 1e-9;

/// One root-squaring step on coefficients listed lowest degree first.
fn graeffe_step(c: &[BigInt]) -> Vec<BigInt> {
    let even: Vec<BigInt> = c.iter().step_by(2).cloned().collect();
    let odd: Vec<BigInt> = c.iter().skip(1).step_by(2).cloned().collect();
    let square = |v: &[BigInt]| -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); (2 * v.len()).saturating_sub(1)];
        for (i, a) in v.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let e2 = square(&even);
    let o2 = square(&odd);
    let mut out = vec![BigInt::zero(); c.len()];
    for (i, v) in e2.into_iter().enumerate() {
        out[i] += v;
    }
    // y·O(y)²
    for (i, v) in o2.into_iter().enumerate() {
        out[i + 1] -= v;
    }
    out
}

/// Enclosure of `log₂ |n|` for `n != 0`.
fn log2_bounds(n: &BigInt) -> (f64, f64) {
    let bits = n.bits();
    if bits <= 53 {
        let v = n.abs().to_f64().expect("fits");
        let l = v.log2();
        return (l - LOG_MARGIN, l + LOG_MARGIN);
    }
    let shift = bits - 53;
    let top = (n.abs() >> shift).to_u64().expect("53 bits");
    let lo = (top as f64).log2() + shift as f64;
    let hi = ((top + 1) as f64).log2() + shift as f64;
    (lo - LOG_MARGIN, hi + LOG_MARGIN)
}

/// Enclosure `[lo, hi]` of `log₂ M(f)` after `steps` Graeffe iterations.
/// `lo >= log₂ |a_n| >= 0` always holds; the width is at most about
/// `(n + log₂ C(2n, n) / 2) / 2^steps`.
pub fn graeffe_log2_bounds(f: &IntPolynomial, steps: u32) -> (f64, f64) {
    let n = f.degree();
    let lead = log2_bounds(f.leading()).0.max(0.0);
    if n == 0 {
        let (lo, hi) = log2_bounds(f.leading());
        return (lo.max(0.0), hi);
    }
    let mut c = f.coeffs().to_vec();
    for _ in 0..steps {
        c = graeffe_step(&c);
    }
    let scale = (1u64 << steps) as f64;
    let mut lower = f64::NEG_INFINITY;
    for (j, cj) in c.iter().enumerate() {
        if cj.is_zero() {
            continue;
        }
        let binom = binomial(BigInt::from(n), BigInt::from(j));
        let v = log2_bounds(cj).0 - log2_bounds(&binom).1;
        lower = lower.max(v);
    }
    let norm_sq: BigInt = c.iter().map(|x| x * x).sum();
    let upper = log2_bounds(&norm_sq).1 / 2.0;
    ((lower / scale).max(lead), upper / scale)
}
