use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::derived::{
    ball_subgroup, brute_force_derived, classify_height, closed_ball_subgroup, rho1_exact, rho_inf_exact,
    zero_set, HeightClass,
};
use super::group::HeightedGroup;

/// Groups up to this order also run the exhaustive reference computation.
pub const ORACLE_MAX_ORDER: usize = 24;

/// Groups up to this order check the quotient metric on literal triples.
const TRIPLE_CHECK_MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub checks: Vec<Check>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    fn push(&mut self, name: &str, passed: bool) {
        self.checks.push(Check { name: name.to_string(), passed });
    }
}

/// For a metric height: the zero set is a subgroup, the height is constant
/// on its cosets, and `log ρ(x y⁻¹)` is a metric on the quotient.
fn metric_quotient_checks(report: &mut TheoremReport, prefix: &str, h: &HeightedGroup) {
    let group = h.group();
    let z = zero_set(h);
    report.push(&format!("{prefix}: zero set is a subgroup"), group.is_subgroup(&z));
    let constant = group
        .elements()
        .all(|g| group.elements().filter(|&k| z[k]).all(|k| h.at(group.op(g, k)) == h.at(g)));
    report.push(&format!("{prefix}: constant on zero-set cosets"), constant);
    let dist = |x: usize, y: usize| h.at(group.op(x, group.inv(y)));
    let symmetric = group.elements().all(|x| group.elements().all(|y| dist(x, y) == dist(y, x)));
    report.push(&format!("{prefix}: quotient distance is symmetric"), symmetric);
    let separates = group
        .elements()
        .all(|x| group.elements().all(|y| z[group.op(x, group.inv(y))] == dist(x, y).is_one()));
    report.push(&format!("{prefix}: distance zero exactly on equal cosets"), separates);
    // with d(x, z) = log ρ(x z⁻¹) the triangle inequality for (x, y, z) is
    // submultiplicativity at the pair (x y⁻¹, y z⁻¹)
    let triangle = if group.order() <= TRIPLE_CHECK_MAX_ORDER {
        group.elements().all(|x| {
            group.elements().all(|y| group.elements().all(|w| dist(x, w) <= &(dist(x, y) * dist(y, w))))
        })
    } else {
        group
            .elements()
            .all(|a| group.elements().all(|b| h.at(group.op(a, b)) <= &(h.at(a) * h.at(b))))
    };
    report.push(&format!("{prefix}: quotient distance satisfies the triangle inequality"), triangle);
}

/// Radii at which the ball identities are tested: every value of the table
/// and every midpoint between consecutive values, plus one above the top.
/// The smallest is 1.
fn probe_radii(h: &HeightedGroup) -> Vec<BigRational> {
    let values = h.values();
    let mut radii = values.clone();
    for w in values.windows(2) {
        radii.push((&w[0] + &w[1]) / BigRational::from_integer(2.into()));
    }
    radii.push(values.last().expect("nonempty table") + BigRational::one());
    radii
}

/// Every structural statement about `ρ₁` and `ρ∞` on this group, checked
/// exhaustively in exact arithmetic. `lower` is an optional second height
/// with `lower <= ρ` used for the maximality and ordering statements.
pub fn check_theorems(rho: &HeightedGroup, lower: Option<&HeightedGroup>) -> TheoremReport {
    let mut r = TheoremReport { checks: Vec::new() };
    let class = classify_height(rho);
    let rho1 = rho1_exact(rho);
    let rho_inf = rho_inf_exact(rho);
    let class1 = classify_height(&rho1);
    let class_inf = classify_height(&rho_inf);

    r.push("rho1 is a metric height", class1 >= HeightClass::Metric);
    r.push("rho1 <= rho", rho1.le(rho));
    r.push("rho = rho1 iff rho is metric", (rho == &rho1) == (class >= HeightClass::Metric));
    r.push("(rho1)1 = rho1", rho1_exact(&rho1) == rho1);

    r.push("rho_inf is a strong metric height", class_inf == HeightClass::Strong);
    r.push("rho_inf <= rho1", rho_inf.le(&rho1));
    r.push("rho = rho_inf iff rho is strong", (rho == &rho_inf) == (class == HeightClass::Strong));
    let chain = rho_inf_exact(&rho1) == rho_inf
        && rho1_exact(&rho_inf) == rho_inf
        && rho_inf_exact(&rho_inf) == rho_inf;
    r.push("rho_inf = (rho1)_inf = (rho_inf)_1 = (rho_inf)_inf", chain);

    metric_quotient_checks(&mut r, "rho1", &rho1);
    metric_quotient_checks(&mut r, "rho_inf", &rho_inf);
    if class >= HeightClass::Metric {
        metric_quotient_checks(&mut r, "rho", rho);
    }

    let group = rho.group();
    let radii = probe_radii(rho);
    // for r <= 1 the open ball is empty while every subgroup holds the identity
    let open = radii.iter().filter(|t| !t.is_one()).all(|t| {
        let ball: Vec<bool> = group.elements().map(|g| rho_inf.at(g) < t).collect();
        ball == ball_subgroup(rho, t)
    });
    r.push("open rho_inf ball equals subgroup generated by rho < r", open);
    let closed = radii.iter().all(|t| {
        let ball: Vec<bool> = group.elements().map(|g| rho_inf.at(g) <= t).collect();
        ball == closed_ball_subgroup(rho, t)
    });
    r.push("closed rho_inf ball equals subgroup generated by rho <= r", closed);

    if let Some(low) = lower {
        let low = low.min(rho);
        let sigma1 = rho1_exact(&low);
        let sigma_inf = rho_inf_exact(&low);
        r.push("metric sigma <= rho implies sigma <= rho1", sigma1.le(&rho1));
        r.push("strong sigma <= rho implies sigma <= rho_inf", sigma_inf.le(&rho_inf));
        r.push("h <= rho implies h1 <= rho1 and h_inf <= rho_inf", sigma1.le(&rho1) && sigma_inf.le(&rho_inf));
    }

    if group.order() <= ORACLE_MAX_ORDER {
        let (p, m) = brute_force_derived(rho);
        r.push("rho1 matches exhaustive factorization search", p.as_slice() == rho1.height());
        r.push("rho_inf matches exhaustive factorization search", m.as_slice() == rho_inf.height());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::integer;

    #[test]
    fn cyclic_five_passes_everything() {
        let g = HeightedGroup::from_orders(vec![5], [1, 5, 2, 2, 5].map(integer).to_vec()).unwrap();
        let low = HeightedGroup::from_orders(vec![5], [1, 3, 3, 3, 3].map(integer).to_vec()).unwrap();
        let report = check_theorems(&g, Some(&low));
        assert!(report.all_passed(), "{:?}", report.failures());
        assert!(report.checks.len() >= 20);
    }

    #[test]
    fn detects_a_broken_table() {
        // a hand-built "rho1" that is not metric must fail the metric checks
        let g = HeightedGroup::from_orders(vec![5], [1, 5, 2, 2, 5].map(integer).to_vec()).unwrap();
        let mut r = TheoremReport { checks: Vec::new() };
        metric_quotient_checks(&mut r, "rho", &g);
        assert!(!r.all_passed());
    }
}
