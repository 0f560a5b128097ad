//! The group of surd cosets: formal products of primes with rational
//! exponents modulo torsion, with exact heights, degrees and `M∞`.

pub mod coset;
pub mod parse;
pub mod power;

pub use coset::{surd_from_rational, SurdCoset, SurdHeightValue};
pub use parse::parse_surd;
pub use power::FormalPower;

pub fn surd_mul(x: &SurdCoset, y: &SurdCoset) -> SurdCoset {
    x.mul(y)
}

pub fn surd_pow(x: &SurdCoset, r: &crate::exact::ExactRational) -> crate::Result<SurdCoset> {
    x.pow(r)
}

pub fn surd_weil_height(x: &SurdCoset) -> SurdHeightValue {
    x.weil_height()
}

pub fn surd_degree(x: &SurdCoset) -> num_bigint::BigInt {
    x.degree()
}

pub fn surd_m_infinity(x: &SurdCoset) -> u64 {
    x.m_infinity()
}

pub fn surd_h_to_the_d(x: &SurdCoset) -> SurdHeightValue {
    x.h_to_the_d()
}
