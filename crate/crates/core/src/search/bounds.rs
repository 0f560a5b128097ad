use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::pool::{ExactMeasure, FactorPool, PoolElement};
use crate::error::{Error, Result};
use crate::exact::rational::bits_for;
use crate::exact::IntPolynomial;
use crate::measure::{largest_nonunit_prime, RealEnclosure};
use crate::surd::{SurdCoset, SurdHeightValue};

/// How factor measures combine along a factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    /// `max M(α_n)`, bounding the strong metric Mahler measure `M∞`.
    #[serde(rename = "max")]
    Max,
    /// `∏ M(α_n)`, bounding the metric Mahler measure `M₁`.
    #[serde(rename = "product")]
    Product,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Max => "minf",
            SearchMode::Product => "m1",
        })
    }
}

/// Result of a bounded factorization search.
///
/// `upper` encloses the value of `witness`, whose product is the target.
/// `lower` is a proven lower bound independent of the pool; `pinned` means
/// the two coincide exactly.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub mode: SearchMode,
    pub target: PoolElement,
    pub upper_exact: ExactMeasure,
    pub upper: RealEnclosure,
    pub witness: Vec<PoolElement>,
    pub lower: BigRational,
    pub pinned: bool,
    /// Candidate partial factorizations visited.
    pub explored: u64,
}

struct Search<'a> {
    pool: &'a FactorPool,
    target: PoolElement,
    index: HashMap<PoolElement, usize>,
    mode: SearchMode,
    best: (ExactMeasure, Vec<usize>),
    explored: u64,
}

impl Search<'_> {
    fn combine(&self, acc: &ExactMeasure, m: &ExactMeasure) -> ExactMeasure {
        match self.mode {
            SearchMode::Max => acc.max(m).clone(),
            SearchMode::Product => acc.mul(m),
        }
    }

    /// Smallest value any completion of `acc` by `remaining` factors drawn
    /// from index `i` on can reach. Members are sorted by measure.
    fn floor(&self, acc: &ExactMeasure, i: usize, remaining: usize) -> ExactMeasure {
        let m = &self.pool.measures()[i];
        match self.mode {
            SearchMode::Max => acc.max(m).clone(),
            SearchMode::Product => (0..remaining).fold(acc.clone(), |a, _| a.mul(m)),
        }
    }

    fn run(&mut self, remaining: usize, start: usize, product: &PoolElement, acc: &ExactMeasure, chosen: &mut Vec<usize>) {
        self.explored += 1;
        if remaining == 1 {
            let needed = self.target.div(product);
            if let Some(&j) = self.index.get(&needed) {
                if j >= start {
                    let value = self.combine(acc, &self.pool.measures()[j]);
                    if value < self.best.0 {
                        chosen.push(j);
                        self.best = (value, chosen.clone());
                        chosen.pop();
                    }
                }
            }
            return;
        }
        for i in start..self.pool.len() {
            // the floor is nondecreasing in i, so nothing later improves
            if self.floor(acc, i, remaining) >= self.best.0 {
                break;
            }
            chosen.push(i);
            let next = product.mul(&self.pool.members()[i]);
            let acc_next = self.combine(acc, &self.pool.measures()[i]);
            self.run(remaining - 1, i, &next, &acc_next, chosen);
            chosen.pop();
        }
    }
}

/// Minimal polynomial over `ℤ`, for the lower bounds that need one.
fn target_polynomial(x: &PoolElement) -> Result<Option<IntPolynomial>> {
    match x {
        PoolElement::Rational(r) => Ok(Some(IntPolynomial::linear_for(r)?)),
        PoolElement::Quad(q) => Ok(Some(q.minimal_polynomial()?)),
        PoolElement::Surd(_) => Ok(None),
    }
}

/// Largest prime at which the target is not a unit; `M∞` is at least this.
fn prime_lower_bound(x: &PoolElement) -> Result<BigRational> {
    let p = match x {
        PoolElement::Surd(s) => s.m_infinity(),
        other => {
            let f = target_polynomial(other)?.expect("rational or quadratic");
            largest_nonunit_prime(&f)?.unwrap_or(1)
        }
    };
    Ok(BigRational::from_integer(p.into()))
}

fn search(target: &PoolElement, pool: &FactorPool, mode: SearchMode, tol: &BigRational) -> Result<BoundReport> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let target = target.coerce(pool.ambient())?;
    let bits = bits_for(tol) + 2;
    let lower = match mode {
        SearchMode::Max => prime_lower_bound(&target)?,
        SearchMode::Product => target.weil_height(bits)?.lo().clone(),
    };
    if target.is_identity() {
        return finish(mode, target, ExactMeasure::one(), Vec::new(), lower, tol, bits, 0);
    }
    let pool = pool.with_member(target.clone())?;
    let index: HashMap<PoolElement, usize> =
        pool.members().iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let trivial = index[&target];
    let mut s = Search {
        pool: &pool,
        target: target.clone(),
        index,
        mode,
        best: (pool.measures()[trivial].clone(), vec![trivial]),
        explored: 1,
    };
    let identity = PoolElement::identity(pool.ambient());
    // iterative deepening with strict improvement: among equal values the
    // shortest witness wins, then the first in member order
    for length in 2..=pool.max_length {
        s.run(length, 0, &identity, &ExactMeasure::one(), &mut Vec::new());
    }
    let witness = s.best.1.iter().map(|&i| pool.members()[i].clone()).collect();
    finish(mode, target, s.best.0, witness, lower, tol, bits, s.explored)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    mode: SearchMode,
    target: PoolElement,
    upper_exact: ExactMeasure,
    witness: Vec<PoolElement>,
    lower: BigRational,
    tol: &BigRational,
    bits: u64,
    explored: u64,
) -> Result<BoundReport> {
    let upper = upper_exact.enclose(bits);
    if lower > upper.hi() + tol {
        return Err(Error::InvariantViolation(format!(
            "lower bound {lower} exceeds the {mode} upper bound {upper_exact} for {target}"
        )));
    }
    let pinned = upper_exact.as_rational() == Some(&lower);
    Ok(BoundReport { mode, target, upper_exact, upper, witness, lower, pinned, explored })
}

/// Upper bound for `M∞(target)`: the least `max M(α_n)` over factorizations
/// of length at most `pool.max_length` with factors from the pool. The
/// target itself is always a candidate.
pub fn search_minf_upper(target: &PoolElement, pool: &FactorPool, tol: &BigRational) -> Result<BoundReport> {
    search(target, pool, SearchMode::Max, tol)
}

/// Upper bound for `M₁(target)`: the least `∏ M(α_n)` over the same
/// factorizations.
pub fn search_m1_upper(target: &PoolElement, pool: &FactorPool, tol: &BigRational) -> Result<BoundReport> {
    search(target, pool, SearchMode::Product, tol)
}

/// Every factorization of `target` into at most `max_length` members of
/// the pool (the target included), as nondecreasing member lists.
pub fn enumerate_factorizations(target: &PoolElement, pool: &FactorPool) -> Result<Vec<Vec<PoolElement>>> {
    let target = target.coerce(pool.ambient())?;
    let pool = pool.with_member(target.clone())?;
    let index: HashMap<PoolElement, usize> =
        pool.members().iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut out = Vec::new();
    fn rec(
        pool: &FactorPool,
        index: &HashMap<PoolElement, usize>,
        target: &PoolElement,
        remaining: usize,
        start: usize,
        product: &PoolElement,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<PoolElement>>,
    ) {
        if remaining == 1 {
            if let Some(&j) = index.get(&target.div(product)) {
                if j >= start {
                    let mut w: Vec<PoolElement> = chosen.iter().map(|&i| pool.members()[i].clone()).collect();
                    w.push(pool.members()[j].clone());
                    out.push(w);
                }
            }
            return;
        }
        for i in start..pool.len() {
            chosen.push(i);
            rec(pool, index, target, remaining - 1, i, &product.mul(&pool.members()[i]), chosen, out);
            chosen.pop();
        }
    }
    let identity = PoolElement::identity(pool.ambient());
    for length in 1..=pool.max_length {
        rec(&pool, &index, &target, length, 0, &identity, &mut Vec::new(), &mut out);
    }
    Ok(out)
}

/// `x` as the product of `n` copies of `x^{1/n}`, each of Weil height
/// `H(x)^{1/n}`; the maximum over the factors tends to 1 as `n` grows.
#[derive(Debug, Clone)]
pub struct RootSplit {
    pub factor: SurdCoset,
    pub copies: u64,
    pub factor_height: SurdHeightValue,
    pub enclosure: RealEnclosure,
}

pub fn hinf_root_split(x: &SurdCoset, n: u64, tol: &BigRational) -> Result<RootSplit> {
    if n == 0 {
        return Err(Error::InvalidArgument("number of factors must be positive".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let factor = x.pow(&BigRational::new(1.into(), n.into()))?;
    let product = factor.pow(&BigRational::from_integer(n.into()))?;
    if &product != x {
        return Err(Error::InvariantViolation(format!("{n} copies of {factor} multiply to {product}, not {x}")));
    }
    let factor_height = factor.weil_height();
    let expected = x.weil_height().pow(&BigRational::new(1.into(), n.into()));
    if factor_height.value() != expected.value() {
        return Err(Error::InvariantViolation(format!("H({factor}) differs from H({x})^(1/{n})")));
    }
    let enclosure = factor_height.enclose(bits_for(tol) + 2);
    Ok(RootSplit { factor, copies: n, factor_height, enclosure })
}
