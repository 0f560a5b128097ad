//! Certified Mahler measures and Weil heights of integer polynomials, with
//! root-of-unity detection, `p`-adic unit tests and the Dobrowolski bound.

pub mod arith;
pub mod cyclotomic;
pub mod graeffe;
pub mod irreducible;
pub mod mahler;
pub mod real;
pub mod roots;

pub use arith::{default_dobrowolski_constant, dobrowolski_lower_bound, is_p_adic_unit, largest_nonunit_prime};
pub use cyclotomic::{cyclotomic_polynomial, is_root_of_unity};
pub use graeffe::graeffe_log2_bounds;
pub use irreducible::{check_irreducible, Irreducibility};
pub use mahler::{mahler_measure, measure_from_roots, weil_height};
pub use real::RealEnclosure;
pub use roots::{certified_roots, RootBox};
