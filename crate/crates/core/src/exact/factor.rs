use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Trial divisors for cofactors above 64 bits stop here; anything left
/// over that is neither 1 nor a probable prime is reported as
/// `FactorizationLimit`. Cofactors that fit in 64 bits always factor.
pub const TRIAL_DIVISION_LIMIT: u64 = 1 << 24;

/// Ordered map prime -> nonzero exponent. Empty for `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    factors: BTreeMap<u64, i64>,
}

impl PrimeFactorization {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn exponent(&self, p: u64) -> i64 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.keys().copied()
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.keys().next_back().copied()
    }

    fn add(&mut self, p: u64, e: i64) {
        let entry = self.factors.entry(p).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&p);
        }
    }

    /// Multiplies the factorizations (adds exponents).
    pub fn merge(&mut self, other: &PrimeFactorization) {
        for (p, e) in other.iter() {
            self.add(p, e);
        }
    }

    /// Recomposes the positive rational `∏ p^e`.
    pub fn value(&self) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in self.iter() {
            let pp = BigInt::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pp;
            } else {
                den *= pp;
            }
        }
        BigRational::new(num, den)
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Factors a positive integer by trial division, using Miller-Rabin to stop
/// as soon as the remaining cofactor is prime and Pollard-Brent rho once it
/// fits in 64 bits.
pub fn factorize(n: &BigInt) -> Result<PrimeFactorization> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("cannot factor {n}: must be positive")));
    }
    let mut out = PrimeFactorization::new();
    let mut rest = n.magnitude().clone();
    if let Some(small) = rest.to_u64() {
        factor_u64(small, &mut out);
        return Ok(out);
    }
    let mut d: u64 = 2;
    loop {
        if let Some(small) = rest.to_u64() {
            factor_u64(small, &mut out);
            return Ok(out);
        }
        if is_probable_prime(&rest) {
            return Err(Error::FactorizationLimit(format!(
                "{n}: prime factor {rest} does not fit in 64 bits"
            )));
        }
        // strip every trial divisor below the next probable-prime check
        loop {
            if d > TRIAL_DIVISION_LIMIT {
                return Err(Error::FactorizationLimit(n.to_string()));
            }
            let bd = BigUint::from(d);
            let mut hit = false;
            while (&rest % &bd).is_zero() {
                rest /= &bd;
                out.add(d, 1);
                hit = true;
            }
            d = if d == 2 { 3 } else { d + 2 };
            if hit {
                break;
            }
        }
    }
}

/// Trial division by small primes, then Pollard-Brent rho on whatever
/// composite cofactor remains. Always completes for 64-bit input.
fn factor_u64(mut n: u64, out: &mut PrimeFactorization) {
    const SMALL: u64 = 1 << 12;
    let mut d: u64 = 2;
    while n > 1 && d <= SMALL {
        if d * d > n {
            break;
        }
        while n % d == 0 {
            n /= d;
            out.add(d, 1);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            out.add(m, 1);
            continue;
        }
        let f = pollard_brent(m);
        stack.push(f);
        stack.push(m / f);
    }
}

/// A nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let r = integer_sqrt(n);
    if r * r == n {
        return r;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q, mut g) = (2u64, 2u64, 1u64, 1u64);
        let mut ys = y;
        let mut len = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..len {
                y = f(y);
            }
            let mut k = 0;
            while k < len && g == 1 {
                ys = y;
                for _ in 0..(128.min(len - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            len *= 2;
        }
        if g == n {
            // the batch overshot; retrace one step at a time
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("some polynomial x^2 + c splits every odd composite")
}

fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Factorization of `|x|` for a nonzero rational, denominators as negative exponents.
pub fn factorize_rational(x: &BigRational) -> Result<PrimeFactorization> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut f = factorize(&x.numer().abs())?;
    let den = factorize(x.denom())?;
    for (p, e) in den.iter() {
        f.add(p, -e);
    }
    Ok(f)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on the first twelve prime bases; deterministic below
/// 3.3e24, a strong probable-prime test above that.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &WITNESSES {
        let a = BigUint::from(a);
        if n.is_multiple_of(&a) {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Euler's totient of a small integer.
pub fn euler_phi(n: u64) -> u64 {
    let f = factorize(&BigInt::from(n)).expect("positive input");
    f.iter()
        .map(|(p, e)| (p - 1) * p.pow(e as u32 - 1))
        .product()
}
