use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::group::HeightedGroup;

/// Strongest inequality a height satisfies over all pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HeightClass {
    Plain,
    Metric,
    Strong,
}

impl fmt::Display for HeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeightClass::Plain => "plain",
            HeightClass::Metric => "metric",
            HeightClass::Strong => "strong",
        })
    }
}

/// Least product `∏ ρ(α_n)` over factorizations of each element: a
/// shortest-path search from the identity where the step `g → gh` costs
/// the factor `ρ(h) >= 1`.
pub fn rho1_exact(g: &HeightedGroup) -> HeightedGroup {
    let group = g.group();
    let n = group.order();
    let mut dist: Vec<Option<BigRational>> = vec![None; n];
    let mut done = vec![false; n];
    dist[0] = Some(BigRational::one());
    for _ in 0..n {
        let Some(u) = (0..n)
            .filter(|&v| !done[v] && dist[v].is_some())
            .min_by(|&a, &b| dist[a].cmp(&dist[b]))
        else {
            break;
        };
        done[u] = true;
        let du = dist[u].clone().expect("reached");
        for h in 1..n {
            let v = group.op(u, h);
            if done[v] {
                continue;
            }
            let candidate = &du * g.at(h);
            if dist[v].as_ref().is_none_or(|d| &candidate < d) {
                dist[v] = Some(candidate);
            }
        }
    }
    let table = dist.into_iter().map(|d| d.expect("every element factors as itself")).collect();
    g.with_height(table).expect("derived tables satisfy the height axioms")
}

/// Least `max ρ(α_n)` over factorizations: the smallest threshold `r` such
/// that the element lies in the subgroup generated by `{h : ρ(h) <= r}`.
pub fn rho_inf_exact(g: &HeightedGroup) -> HeightedGroup {
    let group = g.group();
    let n = group.order();
    let mut table: Vec<Option<BigRational>> = vec![None; n];
    table[0] = Some(BigRational::one());
    let mut members = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by(|&a, &b| g.at(a).cmp(g.at(b)));
    for h in order {
        if table[h].is_some() {
            continue;
        }
        let r = g.at(h).clone();
        gens.push(h);
        // close the current subgroup under the new generator; everything
        // reached now first becomes available at threshold r
        let mut frontier: Vec<usize> = members.iter().map(|&x| group.op(x, h)).collect();
        while let Some(x) = frontier.pop() {
            if table[x].is_some() {
                continue;
            }
            table[x] = Some(r.clone());
            members.push(x);
            frontier.extend(gens.iter().map(|&s| group.op(x, s)));
        }
    }
    let table = table.into_iter().map(|v| v.expect("generated by all elements")).collect();
    g.with_height(table).expect("derived tables satisfy the height axioms")
}

/// Subgroup generated by `{g : ρ(g) < r}`.
pub fn ball_subgroup(g: &HeightedGroup, r: &BigRational) -> Vec<bool> {
    let gens: Vec<usize> = g.group().elements().filter(|&e| g.at(e) < r).collect();
    g.group().generated(&gens)
}

/// Subgroup generated by `{g : ρ(g) <= r}`.
pub fn closed_ball_subgroup(g: &HeightedGroup, r: &BigRational) -> Vec<bool> {
    let gens: Vec<usize> = g.group().elements().filter(|&e| g.at(e) <= r).collect();
    g.group().generated(&gens)
}

/// `{g : ρ(g) = 1}` as a membership mask.
pub fn zero_set(g: &HeightedGroup) -> Vec<bool> {
    g.height().iter().map(|v| v.is_one()).collect()
}

/// First pair `(a, b)` with `ρ(ab) > ρ(a) ρ(b)`.
pub fn triangle_violation(g: &HeightedGroup) -> Option<(usize, usize)> {
    let group = g.group();
    for a in group.elements() {
        for b in a..group.order() {
            if g.at(group.op(a, b)) > &(g.at(a) * g.at(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// First pair `(a, b)` with `ρ(ab) > max(ρ(a), ρ(b))`.
pub fn ultrametric_violation(g: &HeightedGroup) -> Option<(usize, usize)> {
    let group = g.group();
    for a in group.elements() {
        for b in a..group.order() {
            if g.at(group.op(a, b)) > g.at(a).max(g.at(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn classify_height(g: &HeightedGroup) -> HeightClass {
    if ultrametric_violation(g).is_none() {
        HeightClass::Strong
    } else if triangle_violation(g).is_none() {
        HeightClass::Metric
    } else {
        HeightClass::Plain
    }
}

/// Exhaustive reference values `(ρ₁, ρ∞)` over every factorization of
/// length at most `|G|`, by dynamic programming on the length. Longer
/// factorizations revisit a partial product and shorten without raising
/// the product or the maximum.
pub fn brute_force_derived(g: &HeightedGroup) -> (Vec<BigRational>, Vec<BigRational>) {
    let group = g.group();
    let n = group.order();
    let mut prod: Vec<Option<BigRational>> = vec![None; n];
    let mut maxi: Vec<Option<BigRational>> = vec![None; n];
    prod[0] = Some(BigRational::one());
    maxi[0] = Some(BigRational::one());
    for _ in 0..n {
        let mut next_prod = prod.clone();
        let mut next_max = maxi.clone();
        for x in 0..n {
            for h in 0..n {
                let y = group.op(x, h);
                if let Some(p) = &prod[x] {
                    let c = p * g.at(h);
                    if next_prod[y].as_ref().is_none_or(|d| &c < d) {
                        next_prod[y] = Some(c);
                    }
                }
                if let Some(m) = &maxi[x] {
                    let c = m.max(g.at(h)).clone();
                    if next_max[y].as_ref().is_none_or(|d| &c < d) {
                        next_max[y] = Some(c);
                    }
                }
            }
        }
        prod = next_prod;
        maxi = next_max;
    }
    (
        prod.into_iter().map(|v| v.expect("reachable")).collect(),
        maxi.into_iter().map(|v| v.expect("reachable")).collect(),
    )
}
