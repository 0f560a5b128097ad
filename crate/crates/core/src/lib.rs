//! Heights of algebraic numbers: certified Mahler measures and Weil heights,
//! the metric and strong metric height constructions on abelian groups,
//! exact strong metric Mahler measures of surds, and factorization search
//! for bounds on the metric Mahler measures of quadratic and surd elements.

pub mod error;
pub mod exact;
pub mod framework;
pub mod measure;
pub mod quad;
pub mod search;
pub mod surd;

pub use error::{Error, Result};
