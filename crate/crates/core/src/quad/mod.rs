//! Exact arithmetic in real quadratic fields `ℚ(√D)`, minimal polynomials,
//! norms, Mahler measures and bounded minimum-height enumeration.

pub mod element;
pub mod height;
pub mod parse;

pub use element::{is_squarefree, QuadElement};
pub use height::{
    qf_box_elements, qf_enumerate_min_height, qf_height_squared, qf_mahler_measure, qf_mahler_measure_exact,
    qf_weil_height,
};
pub use parse::parse_quad;

/// Minimal polynomial of `x` over `ℤ`.
pub fn qf_minimal_polynomial(x: &QuadElement) -> crate::Result<crate::exact::IntPolynomial> {
    x.minimal_polynomial()
}

/// Field norm `a² - D b²`.
pub fn qf_norm(x: &QuadElement) -> crate::exact::ExactRational {
    x.norm()
}
