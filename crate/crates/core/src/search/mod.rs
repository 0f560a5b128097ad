//! Bounded factorization search over finite pools: upper bounds for the
//! strong metric and metric Mahler measures, with certified lower bounds.

pub mod bounds;
pub mod pool;

pub use bounds::{
    enumerate_factorizations, hinf_root_split, search_m1_upper, search_minf_upper, BoundReport, RootSplit,
    SearchMode,
};
pub use pool::{common_ambient, parse_element, parse_pool_file, Ambient, ExactMeasure, FactorPool, PoolElement, PoolSpec};
