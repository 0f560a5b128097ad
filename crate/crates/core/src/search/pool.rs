use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::rational::rational_measure;
use crate::exact::{format_rational, parse_rational};
use crate::measure::RealEnclosure;
use crate::quad::{parse_quad, qf_box_elements, qf_mahler_measure_exact, QuadElement};
use crate::surd::{parse_surd, surd_from_rational, SurdCoset};

/// Group the factorizations live in. Rationals embed in both others.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Rational,
    Quad(u64),
    Surd,
}

/// A member of a factorization pool, already coerced to the pool's ambient
/// group so that products are exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PoolElement {
    Rational(BigRational),
    Quad(QuadElement),
    Surd(SurdCoset),
}

/// Exact Mahler measure: rational, or an element of the ambient `ℚ(√D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactMeasure {
    Rational(BigRational),
    Quad(QuadElement),
}

impl ExactMeasure {
    pub fn one() -> Self {
        ExactMeasure::Rational(BigRational::one())
    }

    fn as_quad(&self, disc: u64) -> QuadElement {
        match self {
            ExactMeasure::Rational(r) => QuadElement::from_rational(r.clone(), disc).expect("valid field"),
            ExactMeasure::Quad(q) => q.clone(),
        }
    }

    pub fn mul(&self, other: &ExactMeasure) -> ExactMeasure {
        match (self, other) {
            (ExactMeasure::Rational(a), ExactMeasure::Rational(b)) => ExactMeasure::Rational(a * b),
            (ExactMeasure::Quad(q), o) | (o, ExactMeasure::Quad(q)) => {
                ExactMeasure::Quad(q.mul(&o.as_quad(q.disc()))).normalized()
            }
        }
    }

    fn normalized(self) -> ExactMeasure {
        match self {
            ExactMeasure::Quad(q) if q.is_rational() => ExactMeasure::Rational(q.a().clone()),
            other => other,
        }
    }

    pub fn enclose(&self, bits: u64) -> RealEnclosure {
        match self {
            ExactMeasure::Rational(r) => RealEnclosure::exact(r.clone()),
            ExactMeasure::Quad(q) => q.enclose(bits),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactMeasure::Rational(r) => Some(r),
            ExactMeasure::Quad(_) => None,
        }
    }
}

impl Ord for ExactMeasure {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExactMeasure::Rational(a), ExactMeasure::Rational(b)) => a.cmp(b),
            (ExactMeasure::Quad(q), o) => q.cmp_value(&o.as_quad(q.disc())),
            (o, ExactMeasure::Quad(q)) => o.as_quad(q.disc()).cmp_value(q),
        }
    }
}

impl PartialOrd for ExactMeasure {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactMeasure::Rational(r) => write!(f, "{}", format_rational(r)),
            ExactMeasure::Quad(q) => write!(f, "{q}"),
        }
    }
}

impl PoolElement {
    pub fn ambient(&self) -> Ambient {
        match self {
            PoolElement::Rational(_) => Ambient::Rational,
            PoolElement::Quad(q) => Ambient::Quad(q.disc()),
            PoolElement::Surd(_) => Ambient::Surd,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            PoolElement::Rational(r) => r.is_zero(),
            PoolElement::Quad(q) => q.is_zero(),
            PoolElement::Surd(_) => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        match self {
            PoolElement::Rational(_) => true,
            PoolElement::Quad(q) => q.is_rational(),
            PoolElement::Surd(s) => s.iter().all(|(_, e)| e.is_integer()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            PoolElement::Rational(r) => r.is_negative(),
            PoolElement::Quad(q) => q.signum() == Ordering::Less,
            PoolElement::Surd(_) => false,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            PoolElement::Rational(r) => r.is_one(),
            PoolElement::Quad(q) => q.is_one(),
            PoolElement::Surd(s) => s.is_identity(),
        }
    }

    /// Re-expresses the element in `ambient`.
    pub fn coerce(&self, ambient: Ambient) -> Result<PoolElement> {
        match (self, ambient) {
            (PoolElement::Rational(r), Ambient::Rational) => Ok(PoolElement::Rational(r.clone())),
            (PoolElement::Rational(r), Ambient::Quad(d)) => Ok(PoolElement::Quad(QuadElement::from_rational(r.clone(), d)?)),
            (PoolElement::Rational(r), Ambient::Surd) => Ok(PoolElement::Surd(surd_from_rational(r, 1)?)),
            (PoolElement::Quad(q), Ambient::Quad(d)) if q.disc() == d || q.is_rational() => {
                Ok(PoolElement::Quad(QuadElement::new(q.a().clone(), q.b().clone(), d)?))
            }
            (PoolElement::Quad(q), Ambient::Rational) if q.is_rational() => Ok(PoolElement::Rational(q.a().clone())),
            (PoolElement::Surd(s), Ambient::Surd) => Ok(PoolElement::Surd(s.clone())),
            (e, a) => Err(Error::AmbientMismatch(format!("{e} cannot be placed in {a:?}"))),
        }
    }

    pub fn mul(&self, other: &PoolElement) -> PoolElement {
        match (self, other) {
            (PoolElement::Rational(a), PoolElement::Rational(b)) => PoolElement::Rational(a * b),
            (PoolElement::Quad(a), PoolElement::Quad(b)) => PoolElement::Quad(a.mul(b)),
            (PoolElement::Surd(a), PoolElement::Surd(b)) => PoolElement::Surd(a.mul(b)),
            _ => panic!("pool elements share one ambient group"),
        }
    }

    /// `self / other`; `other` is nonzero by the pool invariant.
    pub fn div(&self, other: &PoolElement) -> PoolElement {
        match (self, other) {
            (PoolElement::Rational(a), PoolElement::Rational(b)) => PoolElement::Rational(a / b),
            (PoolElement::Quad(a), PoolElement::Quad(b)) => PoolElement::Quad(a.div(b).expect("nonzero divisor")),
            (PoolElement::Surd(a), PoolElement::Surd(b)) => PoolElement::Surd(a.mul(&b.inverse())),
            _ => panic!("pool elements share one ambient group"),
        }
    }

    pub fn identity(ambient: Ambient) -> PoolElement {
        PoolElement::Rational(BigRational::one()).coerce(ambient).expect("1 lies in every ambient group")
    }

    /// `M`, exactly. For a surd coset this is `H^d`, the measure of its
    /// positive real representative of least degree.
    pub fn measure(&self) -> Result<ExactMeasure> {
        match self {
            PoolElement::Rational(r) => {
                if r.is_zero() {
                    return Err(Error::ZeroElement);
                }
                Ok(ExactMeasure::Rational(BigRational::from_integer(rational_measure(r))))
            }
            PoolElement::Quad(q) => Ok(ExactMeasure::Quad(qf_mahler_measure_exact(q)?).normalized()),
            PoolElement::Surd(s) => {
                let v = s.h_to_the_d().to_integer().expect("H^d is an integer");
                Ok(ExactMeasure::Rational(BigRational::from_integer(v)))
            }
        }
    }

    /// Weil height enclosure, `M^{1/deg}`.
    pub fn weil_height(&self, bits: u64) -> Result<RealEnclosure> {
        match self {
            PoolElement::Rational(_) => Ok(self.measure()?.enclose(bits)),
            PoolElement::Quad(q) if q.is_rational() => Ok(self.measure()?.enclose(bits)),
            PoolElement::Quad(q) => {
                let m = qf_mahler_measure_exact(q)?.enclose(bits + 8);
                Ok(m.nth_root(2, bits))
            }
            PoolElement::Surd(s) => Ok(s.weil_height().enclose(bits)),
        }
    }

    /// Stable sort key among members of one ambient group.
    pub fn canonical_key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PoolElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoolElement::Rational(r) => write!(f, "{}", format_rational(r)),
            PoolElement::Quad(q) => write!(f, "{q}"),
            PoolElement::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// Text form of a pool element: `√`/`sqrt` makes a quadratic element,
/// `^` a surd product, anything else a rational.
pub fn parse_element(text: &str, disc: Option<u64>) -> Result<PoolElement> {
    if text.contains('√') || text.contains("sqrt") {
        Ok(PoolElement::Quad(parse_quad(text, disc)?))
    } else if text.contains('^') {
        Ok(PoolElement::Surd(parse_surd(text)?))
    } else {
        let r = parse_rational(text)?;
        if r.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(PoolElement::Rational(r))
    }
}

/// Finest ambient group containing every element.
pub fn common_ambient<'a>(elements: impl IntoIterator<Item = &'a PoolElement>) -> Result<Ambient> {
    let mut ambient = Ambient::Rational;
    for e in elements {
        let a = match e {
            PoolElement::Quad(q) if q.is_rational() => Ambient::Rational,
            other => other.ambient(),
        };
        ambient = match (ambient, a) {
            (x, Ambient::Rational) => x,
            (Ambient::Rational, y) => y,
            (x, y) if x == y => x,
            (x, y) => return Err(Error::AmbientMismatch(format!("{x:?} and {y:?} in one pool"))),
        };
    }
    Ok(ambient)
}

/// Finite set of candidate factors with their exact measures.
///
/// Members are nonzero, not the identity, duplicate-free, and sorted by
/// `(measure, rationals first, positives first, canonical key)`.
#[derive(Debug, Clone)]
pub struct FactorPool {
    ambient: Ambient,
    members: Vec<PoolElement>,
    measures: Vec<ExactMeasure>,
    pub max_length: usize,
}

impl FactorPool {
    pub fn new(members: Vec<PoolElement>, max_length: usize) -> Result<Self> {
        let ambient = common_ambient(&members)?;
        Self::in_ambient(ambient, members, max_length)
    }

    pub fn in_ambient(ambient: Ambient, members: Vec<PoolElement>, max_length: usize) -> Result<Self> {
        if max_length == 0 {
            return Err(Error::InvalidArgument("max_length must be at least 1".into()));
        }
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        for m in members {
            if m.is_zero() {
                return Err(Error::ZeroElement);
            }
            let m = m.coerce(ambient)?;
            if m.is_identity() || !seen.insert(m.clone()) {
                continue;
            }
            let measure = m.measure()?;
            entries.push((measure, (!m.is_rational(), m.is_negative()), m.canonical_key(), m));
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then_with(|| a.2.cmp(&b.2)));
        let (measures, members) = entries.into_iter().map(|(m, _, _, e)| (m, e)).unzip();
        Ok(FactorPool { ambient, members, measures, max_length })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn members(&self) -> &[PoolElement] {
        &self.members
    }

    pub fn measures(&self) -> &[ExactMeasure] {
        &self.measures
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Certified measure enclosures, one per member.
    pub fn measure_enclosures(&self, bits: u64) -> Vec<RealEnclosure> {
        self.measures.iter().map(|m| m.enclose(bits)).collect()
    }

    /// Same pool plus `extra`, re-sorted.
    pub fn with_member(&self, extra: PoolElement) -> Result<FactorPool> {
        let mut members = self.members.clone();
        members.push(extra);
        Self::in_ambient(self.ambient, members, self.max_length)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PoolFile {
    disc: Option<u64>,
    target: String,
    #[serde(default)]
    members: Vec<String>,
    max_length: Option<usize>,
    tol: Option<String>,
    generate: Option<Generate>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Generate {
    bound: u64,
    max_height: String,
}

/// Parsed pool file: the target, the pool and the tolerance.
#[derive(Debug, Clone)]
pub struct PoolSpec {
    pub target: PoolElement,
    pub pool: FactorPool,
    pub tol: Option<BigRational>,
}

/// Reads the TOML pool format:
///
/// ```toml
/// disc = 5
/// target = "1+√5"
/// members = ["2", "(1+√5)/2"]
/// max_length = 3
/// tol = "1e-12"
///
/// [generate]   # adds every box element of ℚ(√disc) with 1 < H <= max_height
/// bound = 8
/// max_height = "2"
/// ```
pub fn parse_pool_file(text: &str, max_length_override: Option<usize>) -> Result<PoolSpec> {
    let file: PoolFile = toml::from_str(text).map_err(|e| {
        let position = e.span().map(|s| s.start).unwrap_or(0);
        Error::syntax(text, position, e.message())
    })?;
    let target = parse_element(&file.target, file.disc)?;
    if target.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut members = file
        .members
        .iter()
        .map(|m| parse_element(m, file.disc))
        .collect::<Result<Vec<_>>>()?;
    if let Some(g) = &file.generate {
        let disc = file
            .disc
            .ok_or_else(|| Error::InvalidArgument("[generate] needs the disc key".into()))?;
        let max_height = parse_rational(&g.max_height)?;
        members.extend(qf_box_elements(disc, g.bound, &max_height)?.into_iter().map(PoolElement::Quad));
    }
    let mut ambient = common_ambient(members.iter().chain(std::iter::once(&target)))?;
    if let (Ambient::Rational, Some(d)) = (ambient, file.disc) {
        ambient = Ambient::Quad(d);
    }
    let max_length = max_length_override.or(file.max_length).unwrap_or(3);
    let tol = file.tol.as_deref().map(parse_rational).transpose()?;
    if tol.as_ref().is_some_and(|t| !t.is_positive()) {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    Ok(PoolSpec {
        target: target.coerce(ambient)?,
        pool: FactorPool::in_ambient(ambient, members, max_length)?,
        tol,
    })
}
