//! Exact arithmetic substrate: rationals, prime factorization and integer
//! polynomials with their text form.

pub mod factor;
pub mod parse;
pub mod poly;
pub mod rational;

pub use factor::{factorize, factorize_rational, is_prime_u64, PrimeFactorization};
pub use parse::{parse_polynomial, print_polynomial};
pub use poly::{canonicalize_poly, IntPolynomial};
pub use rational::{format_rational, parse_rational, ExactRational};
