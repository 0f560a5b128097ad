use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational};

pub const DEFAULT_ORDER_CAP: usize = 512;

/// `ℤ/n_1 × ... × ℤ/n_k`, elements indexed in mixed radix with the first
/// factor varying slowest. Index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    orders: Vec<u64>,
    order: usize,
}

impl Group {
    pub fn new(orders: Vec<u64>, cap: usize) -> Result<Self> {
        if let Some(&n) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidArgument(format!("cyclic factor of order {n}; orders must be >= 2")));
        }
        let mut order: usize = 1;
        for &n in &orders {
            order = order
                .checked_mul(n as usize)
                .filter(|&o| o <= cap)
                .ok_or(Error::GroupTooLarge { order: order.saturating_mul(n as usize), cap })?;
        }
        Ok(Group { orders, order })
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        out
    }

    pub fn index(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidArgument(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.orders.len()
            )));
        }
        let mut index = 0usize;
        for (&c, &n) in coords.iter().zip(&self.orders) {
            if c >= n {
                return Err(Error::InvalidArgument(format!("coordinate {c} out of range for ℤ/{n}")));
            }
            index = index * n as usize + c as usize;
        }
        Ok(index)
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        let mut index = 0usize;
        let mut ra = a;
        let mut rb = b;
        let mut place = 1usize;
        for &n in self.orders.iter().rev() {
            let n = n as usize;
            index += ((ra % n + rb % n) % n) * place;
            ra /= n;
            rb /= n;
            place *= n;
        }
        index
    }

    pub fn inv(&self, a: usize) -> usize {
        let mut index = 0usize;
        let mut ra = a;
        let mut place = 1usize;
        for &n in self.orders.iter().rev() {
            let n = n as usize;
            index += ((n - ra % n) % n) * place;
            ra /= n;
            place *= n;
        }
        index
    }

    /// `"(a1,...,ak)"`.
    pub fn label(&self, index: usize) -> String {
        let parts: Vec<String> = self.coords(index).iter().map(u64::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn parse_label(&self, text: &str) -> Result<usize> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let coords = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|s| s.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::syntax(text, 0, "expected comma-separated coordinates"))?
        };
        self.index(&coords)
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        member
    }

    pub fn is_subgroup(&self, mask: &[bool]) -> bool {
        mask[0]
            && self.elements().filter(|&a| mask[a]).all(|a| {
                mask[self.inv(a)] && self.elements().filter(|&b| mask[b]).all(|b| mask[self.op(a, b)])
            })
    }
}

/// A finite abelian group with a height: `ρ(1) = 1`, `ρ >= 1` and
/// `ρ(g) = ρ(g⁻¹)`, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightedGroup {
    group: Group,
    height: Vec<BigRational>,
}

impl HeightedGroup {
    pub fn new(group: Group, height: Vec<BigRational>) -> Result<Self> {
        if height.len() != group.order() {
            return Err(Error::InvalidArgument(format!(
                "height table has {} entries, group order is {}",
                height.len(),
                group.order()
            )));
        }
        let one = BigRational::one();
        if height[0] != one {
            return Err(Error::HeightAxiom { axiom: "height of the identity is 1", element: group.label(0) });
        }
        for g in group.elements() {
            if height[g] < one {
                return Err(Error::HeightAxiom { axiom: "height at least 1", element: group.label(g) });
            }
            if height[g] != height[group.inv(g)] {
                return Err(Error::HeightAxiom { axiom: "height invariant under inversion", element: group.label(g) });
            }
        }
        Ok(HeightedGroup { group, height })
    }

    pub fn from_orders(orders: Vec<u64>, height: Vec<BigRational>) -> Result<Self> {
        Self::new(Group::new(orders, DEFAULT_ORDER_CAP)?, height)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn height(&self) -> &[BigRational] {
        &self.height
    }

    pub fn at(&self, g: usize) -> &BigRational {
        &self.height[g]
    }

    /// Same group, another height table.
    pub fn with_height(&self, height: Vec<BigRational>) -> Result<Self> {
        Self::new(self.group.clone(), height)
    }

    /// `self <= other` pointwise.
    pub fn le(&self, other: &HeightedGroup) -> bool {
        self.height.iter().zip(&other.height).all(|(a, b)| a <= b)
    }

    /// Pointwise minimum; again a height.
    pub fn min(&self, other: &HeightedGroup) -> HeightedGroup {
        let height = self.height.iter().zip(&other.height).map(|(a, b)| a.min(b).clone()).collect();
        HeightedGroup { group: self.group.clone(), height }
    }

    /// Sorted distinct values of the table.
    pub fn values(&self) -> Vec<BigRational> {
        let mut v = self.height.clone();
        v.sort();
        v.dedup();
        v
    }
}

impl fmt::Display for HeightedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in self.group.elements() {
            writeln!(f, "{} {}", self.group.label(g), format_rational(&self.height[g]))?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    cyclic: Vec<u64>,
    height: BTreeMap<String, toml::Value>,
}

/// Reads the TOML group format:
///
/// ```toml
/// cyclic = [5]
/// [height]
/// "(0)" = "1"
/// "(1)" = "5"
/// ```
///
/// Every element needs an entry; values are integers or `"p/q"` strings.
pub fn parse_group_file(text: &str, cap: usize) -> Result<HeightedGroup> {
    let file: GroupFile = toml::from_str(text).map_err(|e| {
        let position = e.span().map(|s| s.start).unwrap_or(0);
        Error::syntax(text, position, e.message())
    })?;
    let group = Group::new(file.cyclic, cap)?;
    let mut table: Vec<Option<BigRational>> = vec![None; group.order()];
    for (key, value) in &file.height {
        let g = group.parse_label(key)?;
        let v = match value {
            toml::Value::String(s) => parse_rational(s)?,
            toml::Value::Integer(i) => BigRational::from_integer((*i).into()),
            other => return Err(Error::InvalidArgument(format!("height of {key} must be a rational, got {other}"))),
        };
        if table[g].replace(v).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate height entry for {}", group.label(g))));
        }
    }
    let height = table
        .into_iter()
        .enumerate()
        .map(|(g, v)| v.ok_or_else(|| Error::InvalidArgument(format!("missing height for {}", group.label(g)))))
        .collect::<Result<Vec<_>>>()?;
    HeightedGroup::new(group, height)
}

/// Inverse of [`parse_group_file`].
pub fn format_group_file(g: &HeightedGroup) -> String {
    let orders: Vec<String> = g.group.orders().iter().map(u64::to_string).collect();
    let mut out = format!("cyclic = [{}]\n\n[height]\n", orders.join(", "));
    for e in g.group.elements() {
        out.push_str(&format!("\"{}\" = \"{}\"\n", g.group.label(e), format_rational(&g.height[e])));
    }
    out
}
