//! Certified complex root isolation.
//!
//! Approximations come from Aberth iteration, first in `f64` and then in
//! fixed-point big-integer arithmetic at doubling precision. Certification
//! is exact: with Weierstrass corrections `W_i = f(z_i) / (a_n ∏_{j≠i}(z_i - z_j))`
//! the roots of `f` are the eigenvalues of `diag(z) - W 1ᵀ`, so by Gerschgorin
//! the closed disks `|z - z_i| <= n |W_i|` cover every root, and when they
//! are pairwise disjoint each one holds exactly one root. All quantities in
//! that test are evaluated in exact rational arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::real::sqrt_bounds;
use crate::error::{Error, Result};
use crate::exact::poly::to_f64;
use crate::exact::rational::bits_for;
use crate::exact::IntPolynomial;

/// Hard ceiling on the working precision.
pub const MAX_PRECISION_BITS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBox {
    pub center_re: BigRational,
    pub center_im: BigRational,
    pub radius: BigRational,
    pub multiplicity: u32,
}

impl RootBox {
    /// Bounds on `|z|` for every `z` in the disk.
    pub fn modulus_bounds(&self, bits: u64) -> (BigRational, BigRational) {
        let sq = &self.center_re * &self.center_re + &self.center_im * &self.center_im;
        let (lo, hi) = sqrt_bounds(&sq, bits);
        let lo = &lo - &self.radius;
        let lo = if lo.is_negative() { BigRational::zero() } else { lo };
        (lo, hi + &self.radius)
    }

    pub fn center_f64(&self) -> Complex64 {
        use num_traits::ToPrimitive;
        Complex64::new(
            self.center_re.to_f64().unwrap_or(f64::NAN),
            self.center_im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True when the whole disk lies strictly outside the closed unit disk.
    pub fn strictly_outside_unit_circle(&self) -> bool {
        let (lo, _) = self.modulus_bounds(64);
        lo > BigRational::one()
    }
}

/// Complex number `(re + i im) / 2^p` with the scale held by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn zero() -> Self {
        Fixed { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn add(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Fixed, p: u64) -> Fixed {
        Fixed {
            re: (&self.re * &o.re - &self.im * &o.im) >> p,
            im: (&self.re * &o.im + &self.im * &o.re) >> p,
        }
    }

    fn div(&self, o: &Fixed, p: u64) -> Option<Fixed> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = ((&self.re * &o.re + &self.im * &o.im) << p) / &den;
        let im = ((&self.im * &o.re - &self.re * &o.im) << p) / &den;
        Some(Fixed { re, im })
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn l1(&self) -> BigInt {
        self.re.abs() + self.im.abs()
    }

    fn rescale(&self, from: u64, to: u64) -> Fixed {
        Fixed { re: &self.re << (to - from), im: &self.im << (to - from) }
    }

    fn from_f64(z: Complex64, p: u64) -> Fixed {
        const BASE: u64 = 60;
        let scale = 2f64.powi(BASE as i32);
        let conv = |x: f64| BigInt::from_f64((x * scale).round()).unwrap_or_default();
        let base = Fixed { re: conv(z.re), im: conv(z.im) };
        if p >= BASE {
            base.rescale(BASE, p)
        } else {
            Fixed { re: base.re >> (BASE - p), im: base.im >> (BASE - p) }
        }
    }
}

/// `f(z)` and `f'(z)` in fixed point.
fn eval_fixed(coeffs: &[BigInt], z: &Fixed, p: u64) -> (Fixed, Fixed) {
    let mut value = Fixed::zero();
    let mut deriv = Fixed::zero();
    for c in coeffs.iter().rev() {
        deriv = deriv.mul(z, p).add(&value);
        value = value.mul(z, p);
        value.re += c << p;
    }
    (value, deriv)
}

/// One sweep of Gauss-Seidel Aberth updates. Returns the largest correction
/// in the l1 norm, as a fixed-point magnitude.
fn aberth_sweep(coeffs: &[BigInt], zs: &mut [Fixed], p: u64) -> BigInt {
    let one = Fixed { re: BigInt::one() << p, im: BigInt::zero() };
    let mut worst = BigInt::zero();
    for i in 0..zs.len() {
        let (fz, dfz) = eval_fixed(coeffs, &zs[i], p);
        if fz.is_zero() {
            continue;
        }
        let Some(ratio) = fz.div(&dfz, p) else {
            // stationary point: nudge and let the next sweep recover
            zs[i].re += BigInt::one() << (p / 2);
            worst = BigInt::one() << p;
            continue;
        };
        let mut repulsion = Fixed::zero();
        for j in 0..zs.len() {
            if i == j {
                continue;
            }
            let diff = zs[i].sub(&zs[j]);
            match one.div(&diff, p) {
                Some(inv) => repulsion = repulsion.add(&inv),
                None => {
                    zs[i].im += BigInt::one() << (p / 2);
                    worst = BigInt::one() << p;
                }
            }
        }
        let denom = one.sub(&ratio.mul(&repulsion, p));
        let step = ratio.div(&denom, p).unwrap_or(ratio);
        let size = step.l1();
        if size > worst {
            worst = size;
        }
        zs[i] = zs[i].sub(&step);
    }
    worst
}

/// Floating-point Aberth iteration for starting values.
fn initial_roots(f: &IntPolynomial) -> Vec<Complex64> {
    let n = f.degree();
    let lead = to_f64(f.leading());
    let coeffs: Vec<f64> = f.coeffs().iter().map(|c| to_f64(c) / lead).collect();
    // Fujiwara bound on the root moduli
    let bound = (0..n)
        .map(|k| {
            let ratio = coeffs[k].abs();
            if k == 0 {
                (ratio / 2.0).powf(1.0 / n as f64)
            } else {
                ratio.powf(1.0 / (n - k) as f64)
            }
        })
        .fold(0.0f64, f64::max)
        * 2.0;
    let radius = if bound.is_finite() && bound > 0.0 { bound } else { 1.0 };
    let mut zs: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.9, angle)
        })
        .collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(zs[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (zs[i] - zs[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            zs[i] -= step;
            moved = moved.max(step.norm() / (1.0 + zs[i].norm()));
        }
        if moved < 1e-15 {
            break;
        }
    }
    zs
}

struct Certified {
    radii: Vec<BigRational>,
}

/// Exact Gerschgorin certification of the current approximations.
fn certify(f: &IntPolynomial, zs: &[Fixed], p: u64) -> Option<Certified> {
    let n = zs.len();
    let scale = BigInt::one() << p;
    let lead_sq = f.leading() * f.leading();
    let coeffs = f.coeffs();
    let mut radii = Vec::with_capacity(n);
    let radius_bits = p + 32;
    for i in 0..n {
        // F = 2^(p n) f(z_i) as a Gaussian integer
        let mut acc_re = coeffs[n].clone();
        let mut acc_im = BigInt::zero();
        let mut scale_pow = BigInt::one();
        for k in (0..n).rev() {
            scale_pow *= &scale;
            let re = &acc_re * &zs[i].re - &acc_im * &zs[i].im;
            let im = &acc_re * &zs[i].im + &acc_im * &zs[i].re;
            acc_re = re + &coeffs[k] * &scale_pow;
            acc_im = im;
        }
        let value_sq = &acc_re * &acc_re + &acc_im * &acc_im;
        let mut sep = BigInt::one();
        for j in 0..n {
            if i != j {
                let d = zs[i].sub(&zs[j]);
                let norm = &d.re * &d.re + &d.im * &d.im;
                if norm.is_zero() {
                    return None;
                }
                sep *= norm;
            }
        }
        // |W_i|^2 = |F|^2 / (2^(2p) a_n^2 ∏|m_i - m_j|^2)
        let w_sq = BigRational::new(value_sq, &scale * &scale * &lead_sq * sep);
        let r_sq = w_sq * BigRational::from_integer(BigInt::from(n * n));
        let (_, r) = sqrt_bounds(&r_sq, radius_bits);
        radii.push(r);
    }
    let scale_sq = BigRational::from_integer(&scale * &scale);
    for i in 0..n {
        for j in i + 1..n {
            let d = zs[i].sub(&zs[j]);
            let dist_sq = BigRational::from_integer(&d.re * &d.re + &d.im * &d.im) / &scale_sq;
            let reach = &radii[i] + &radii[j];
            if &reach * &reach >= dist_sq {
                return None;
            }
        }
    }
    Some(Certified { radii })
}

/// Isolates every root of a squarefree polynomial in a disk of radius at
/// most `tol`. Boxes come back sorted by the real, then imaginary, part of
/// their centers.
pub fn certified_roots(f: &IntPolynomial, tol: &BigRational) -> Result<Vec<RootBox>> {
    if f.degree() == 0 {
        return Err(Error::InvalidArgument("constant polynomial has no roots".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let n = f.degree();
    let coeffs = f.coeffs();
    let mut p = (bits_for(tol) + 2 * (64 - (n as u64).leading_zeros() as u64) + 16).max(64);
    if p > MAX_PRECISION_BITS {
        return Err(Error::PrecisionExceeded { bits: p });
    }
    // Aberth preserves conjugate symmetry, so a conjugate pair of starting
    // values could never split onto two real roots; distinct offsets break it
    let mut zs: Vec<Fixed> = initial_roots(f)
        .into_iter()
        .enumerate()
        .map(|(k, z)| {
            let mut fz = Fixed::from_f64(z, p);
            fz.re += BigInt::from(2 * k + 1) << (p - 44);
            fz.im += BigInt::from(k + 1) << (p - 46);
            fz
        })
        .collect();
    let mut sweeps = 200;
    loop {
        let threshold = BigInt::from(256);
        for _ in 0..sweeps {
            if aberth_sweep(coeffs, &mut zs, p) <= threshold {
                break;
            }
        }
        if let Some(cert) = certify(f, &zs, p) {
            if cert.radii.iter().all(|r| r <= tol) {
                let scale = BigInt::one() << p;
                let mut boxes: Vec<RootBox> = zs
                    .iter()
                    .zip(cert.radii)
                    .map(|(z, radius)| RootBox {
                        center_re: BigRational::new(z.re.clone(), scale.clone()),
                        center_im: BigRational::new(z.im.clone(), scale.clone()),
                        radius,
                        multiplicity: 1,
                    })
                    .collect();
                boxes.sort_by(|a, b| {
                    (&a.center_re, &a.center_im).cmp(&(&b.center_re, &b.center_im))
                });
                return Ok(boxes);
            }
        }
        if p * 2 > MAX_PRECISION_BITS {
            return Err(Error::PrecisionExceeded { bits: p });
        }
        zs = zs.iter().map(|z| z.rescale(p, 2 * p)).collect();
        p *= 2;
        sweeps = 60;
    }
}
