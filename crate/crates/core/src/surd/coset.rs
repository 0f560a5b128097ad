use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::power::FormalPower;
use crate::error::{Error, Result};
use crate::exact::{factorize_rational, format_rational};
use crate::measure::RealEnclosure;

/// Torsion coset of `∏ p^{r_p}`: sign and roots of unity are quotiented
/// away, so only the exponent vector remains. Exponents are nonzero and
/// keyed by increasing prime; the empty map is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurdCoset {
    exps: BTreeMap<u64, BigRational>,
}

/// Weil height of a surd coset as `max(num_part, den_part)`, with an
/// advisory floating view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdHeightValue {
    pub num_part: FormalPower,
    pub den_part: FormalPower,
    pub float_view: RealEnclosure,
}

const FLOAT_VIEW_BITS: u64 = 64;

impl SurdHeightValue {
    fn from_parts(num_part: FormalPower, den_part: FormalPower) -> Self {
        let float_view = num_part.clone().max(den_part.clone()).enclose(FLOAT_VIEW_BITS);
        SurdHeightValue { num_part, den_part, float_view }
    }

    /// The exact value, the larger of the two parts.
    pub fn value(&self) -> &FormalPower {
        if self.num_part >= self.den_part {
            &self.num_part
        } else {
            &self.den_part
        }
    }

    pub fn pow(&self, r: &BigRational) -> SurdHeightValue {
        Self::from_parts(self.num_part.pow(r), self.den_part.pow(r))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.value().to_integer()
    }

    pub fn enclose(&self, bits: u64) -> RealEnclosure {
        self.value().enclose(bits)
    }
}

impl PartialOrd for SurdHeightValue {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.value().cmp(other.value()))
    }
}

impl fmt::Display for SurdHeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl SurdCoset {
    pub fn identity() -> Self {
        SurdCoset::default()
    }

    /// Drops zero exponents.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (u64, BigRational)>) -> Result<Self> {
        let mut exps: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (p, e) in pairs {
            if !crate::exact::is_prime_u64(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            *exps.entry(p).or_insert_with(BigRational::zero) += e;
        }
        exps.retain(|_, e| !e.is_zero());
        Ok(SurdCoset { exps })
    }

    pub fn is_identity(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, p: u64) -> BigRational {
        self.exps.get(&p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> + '_ {
        self.exps.iter().map(|(&p, e)| (p, e))
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.exps.keys().copied()
    }

    pub fn mul(&self, other: &SurdCoset) -> SurdCoset {
        let mut exps = self.exps.clone();
        for (&p, e) in &other.exps {
            *exps.entry(p).or_insert_with(BigRational::zero) += e;
        }
        exps.retain(|_, e| !e.is_zero());
        SurdCoset { exps }
    }

    pub fn inverse(&self) -> SurdCoset {
        SurdCoset { exps: self.exps.iter().map(|(&p, e)| (p, -e)).collect() }
    }

    pub fn pow(&self, r: &BigRational) -> Result<SurdCoset> {
        if r.is_zero() {
            return Err(Error::InvalidArgument("surd exponent must be nonzero".into()));
        }
        Ok(SurdCoset { exps: self.exps.iter().map(|(&p, e)| (p, e * r)).collect() })
    }

    /// `N`, the lcm of the exponent denominators.
    pub fn degree(&self) -> BigInt {
        self.exps.values().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// `gcd(N, N r_p over p) = 1`, which reduced exponents always satisfy.
    pub fn is_canonical(&self) -> bool {
        let n = self.degree();
        let g = self
            .exps
            .values()
            .fold(n.clone(), |acc, e| acc.gcd(&(e * BigRational::from_integer(n.clone())).to_integer()));
        self.exps.values().all(|e| !e.is_zero()) && g.is_one()
    }

    /// Largest prime in the support, or 1 for the identity.
    pub fn m_infinity(&self) -> u64 {
        self.exps.keys().next_back().copied().unwrap_or(1)
    }

    pub fn weil_height(&self) -> SurdHeightValue {
        let num = FormalPower::from_pairs(
            self.exps.iter().filter(|(_, e)| e.is_positive()).map(|(&p, e)| (p, e.clone())),
        );
        let den = FormalPower::from_pairs(
            self.exps.iter().filter(|(_, e)| e.is_negative()).map(|(&p, e)| (p, -e)),
        );
        SurdHeightValue::from_parts(num, den)
    }

    /// `H(x)^{d(x)}`, always an integer.
    pub fn h_to_the_d(&self) -> SurdHeightValue {
        self.weil_height().pow(&BigRational::from_integer(self.degree()))
    }

    /// The positive rational `∏ p^{N r_p}` with `x = a^{1/N}`.
    pub fn radicand(&self) -> BigRational {
        let n = BigRational::from_integer(self.degree());
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, e) in &self.exps {
            let k = (e * &n).to_integer();
            let pk = num_traits::pow(BigInt::from(p), k.abs().try_into().expect("exponent fits"));
            if k.is_positive() {
                num *= pk;
            } else {
                den *= pk;
            }
        }
        BigRational::new(num, den)
    }
}

/// Coset of `x^{1/d}`; the sign of `x` is torsion and is dropped.
pub fn surd_from_rational(x: &BigRational, d: u64) -> Result<SurdCoset> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    if d == 0 {
        return Err(Error::InvalidArgument("root index must be positive".into()));
    }
    let f = factorize_rational(&x.abs())?;
    let d = BigInt::from(d);
    SurdCoset::from_exponents(f.iter().map(|(p, e)| (p, BigRational::new(BigInt::from(e), d.clone()))))
}

impl fmt::Display for SurdCoset {
    /// `2^3/2 * 3^-1`; the identity prints as `1`.
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
