//! Heighted group fixtures and seeded random height tables shared by the
//! framework property tests and the acceptance suite.

use heightkit::exact::rational::{integer, rational};
use heightkit::framework::{Group, HeightedGroup, DEFAULT_ORDER_CAP};
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Values random tables draw from; few and repeated so that ties occur.
fn palette() -> Vec<BigRational> {
    vec![rational(3, 2), integer(2), rational(5, 2), integer(3), integer(5), integer(7)]
}

fn group(orders: &[u64]) -> Group {
    Group::new(orders.to_vec(), DEFAULT_ORDER_CAP).unwrap()
}

/// Assigns `value(g)` to one element of each inverse pair, mirrors it to
/// the other, and pins the identity at 1.
fn symmetric(group: Group, mut value: impl FnMut(&Group, usize) -> BigRational) -> HeightedGroup {
    let mut table = vec![integer(1); group.order()];
    for g in group.elements().skip(1) {
        let inv = group.inv(g);
        if inv < g {
            table[g] = table[inv].clone();
        } else {
            table[g] = value(&group, g);
        }
    }
    HeightedGroup::new(group, table).unwrap()
}

/// `1 + Σ min(c_i, n_i - c_i)`: a word-length style height, metric.
fn word_length(orders: &[u64]) -> HeightedGroup {
    symmetric(group(orders), |grp, g| {
        let len: u64 =
            grp.coords(g).iter().zip(grp.orders()).map(|(&c, &n)| c.min(n - c)).sum();
        integer(1 + len as i64)
    })
}

/// Height of the coordinate with the largest index that is nonzero, in the
/// style of `M∞` on surds: strong.
fn top_coordinate(orders: &[u64]) -> HeightedGroup {
    let weights = [2, 3, 5, 7, 11, 13, 17, 19, 23];
    symmetric(group(orders), |grp, g| {
        let top = grp.coords(g).iter().rposition(|&c| c != 0).expect("non-identity");
        integer(weights[top])
    })
}

fn seeded(orders: &[u64], seed: u64) -> HeightedGroup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_table(group(orders), &mut rng, 0.1)
}

/// Random symmetric table over the palette; each non-identity pair is set
/// to 1 with probability `ones`.
pub fn random_table(group: Group, rng: &mut ChaCha8Rng, ones: f64) -> HeightedGroup {
    let palette = palette();
    symmetric(group, |_, _| {
        if rng.gen_bool(ones) {
            integer(1)
        } else {
            palette.choose(rng).unwrap().clone()
        }
    })
}

/// A second table below `rho` pointwise, for the ordering statements.
pub fn random_lower(rho: &HeightedGroup, rng: &mut ChaCha8Rng) -> HeightedGroup {
    let other = random_table(rho.group().clone(), rng, 0.2);
    other.min(rho)
}

/// At least 20 named fixtures, cyclic groups and products, order at most 512.
pub fn fixture_groups() -> Vec<(String, HeightedGroup)> {
    let ints = |v: &[i64]| v.iter().map(|&x| integer(x)).collect::<Vec<_>>();
    let mut out = vec![
        ("Z/5 worked table".to_string(), HeightedGroup::from_orders(vec![5], ints(&[1, 5, 2, 2, 5])).unwrap()),
        ("Z/4 with zero set {0, 2}".into(), HeightedGroup::from_orders(vec![4], ints(&[1, 3, 1, 3])).unwrap()),
        ("Z/6 constant 1".into(), HeightedGroup::from_orders(vec![6], ints(&[1; 6])).unwrap()),
    ];
    for orders in [&[7][..], &[12], &[2, 2, 2], &[4, 6], &[64], &[8, 8], &[512]] {
        out.push((format!("word length on {orders:?}"), word_length(orders)));
    }
    for orders in [&[2, 3][..], &[3, 3, 3], &[2, 2, 2, 2, 2, 2], &[4, 4, 4], &[2, 16, 16]] {
        out.push((format!("top coordinate on {orders:?}"), top_coordinate(orders)));
    }
    for (seed, orders) in
        [&[2][..], &[3], &[8], &[9], &[2, 2], &[10], &[24], &[2, 12], &[3, 5, 7], &[128], &[256], &[8, 64]]
            .into_iter()
            .enumerate()
    {
        out.push((format!("seeded table {seed} on {orders:?}"), seeded(orders, seed as u64)));
    }
    out
}

/// Groups the random tables are drawn on; a third have order at most 24 so
/// the exhaustive oracle runs.
pub const RANDOM_SHAPES: [&[u64]; 9] = [&[5], &[6], &[2, 2, 2], &[12], &[2, 10], &[24], &[36], &[4, 8], &[3, 3, 5]];

/// `count` random `(rho, lower)` pairs from a fixed seed.
pub fn random_tables(count: usize, seed: u64) -> Vec<(HeightedGroup, HeightedGroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let shape = RANDOM_SHAPES[i % RANDOM_SHAPES.len()];
            let ones = [0.0, 0.15, 0.4][i % 3];
            let rho = random_table(group(shape), &mut rng, ones);
            let lower = random_lower(&rho, &mut rng);
            (rho, lower)
        })
        .collect()
}
