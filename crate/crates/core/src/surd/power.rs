use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::format_rational;
use crate::measure::real::nth_root_bounds;
use crate::measure::RealEnclosure;

/// Formal product `∏ p^{e_p}` of primes with positive rational exponents.
/// Equality is structural, which matches value equality by unique
/// factorization.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalPower {
    exps: BTreeMap<u64, BigRational>,
}

fn pow_big(p: u64, e: &BigInt) -> BigInt {
    let e = e.to_u32().expect("exponent fits in u32");
    num_traits::pow(BigInt::from(p), e as usize)
}

fn lcm_of_denominators<'a>(exps: impl Iterator<Item = &'a BigRational>) -> BigInt {
    exps.fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
}

impl FormalPower {
    pub fn one() -> Self {
        FormalPower::default()
    }

    /// Builds from `(p, e)` pairs; nonpositive exponents are an error in the
    /// caller and panic here.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, BigRational)>) -> Self {
        let mut exps = BTreeMap::new();
        for (p, e) in pairs {
            assert!(e.is_positive(), "formal power exponents must be positive");
            exps.insert(p, e);
        }
        FormalPower { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> + '_ {
        self.exps.iter().map(|(&p, e)| (p, e))
    }

    /// Raises to a positive rational power.
    pub fn pow(&self, r: &BigRational) -> FormalPower {
        assert!(r.is_positive());
        FormalPower { exps: self.exps.iter().map(|(&p, e)| (p, e * r)).collect() }
    }

    /// The integer value when every exponent is integral.
    pub fn to_integer(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (&p, e) in &self.exps {
            if !e.is_integer() {
                return None;
            }
            acc *= pow_big(p, &e.to_integer());
        }
        Some(acc)
    }

    /// `(X, N)` with value `X^(1/N)`, `X` an integer.
    pub fn as_root(&self) -> (BigInt, BigInt) {
        let n = lcm_of_denominators(self.exps.values());
        let scaled = self.pow(&BigRational::from_integer(n.clone()));
        (scaled.to_integer().expect("integral after scaling"), n)
    }

    pub fn enclose(&self, bits: u64) -> RealEnclosure {
        let (x, n) = self.as_root();
        let x = BigRational::from_integer(x);
        match n.to_u32() {
            Some(1) => RealEnclosure::exact(x),
            Some(n) => {
                let (lo, hi) = nth_root_bounds(&x, n, bits);
                RealEnclosure::new(lo, hi, bits)
            }
            None => panic!("root index {n} too large"),
        }
    }
}

impl Ord for FormalPower {
    /// Cancels shared primes, then compares `∏ p^{a_p N}` against
    /// `∏ q^{b_q N}` as integers.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (&p, e) in &self.exps {
            let d = e - other.exps.get(&p).cloned().unwrap_or_else(BigRational::zero);
            if d.is_positive() {
                left.insert(p, d);
            } else if d.is_negative() {
                right.insert(p, -d);
            }
        }
        for (&p, e) in &other.exps {
            if !self.exps.contains_key(&p) {
                right.insert(p, e.clone());
            }
        }
        if left.is_empty() || right.is_empty() {
            return match (left.is_empty(), right.is_empty()) {
                (true, true) => Ordering::Equal,
                (true, false) => Ordering::Less,
                _ => Ordering::Greater,
            };
        }
        let n = BigRational::from_integer(lcm_of_denominators(left.values().chain(right.values())));
        let value = |m: &BTreeMap<u64, BigRational>| {
            m.iter().fold(BigInt::one(), |acc, (&p, e)| acc * pow_big(p, &(e * &n).to_integer()))
        };
        value(&left).cmp(&value(&right))
    }
}

impl PartialOrd for FormalPower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FormalPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|(p, e)| if e.is_one() { p.to_string() } else { format!("{p}^{}", format_rational(e)) })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}
