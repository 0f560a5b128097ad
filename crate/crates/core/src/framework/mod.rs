//! Heights on finite abelian groups: the metric height `ρ₁` and the strong
//! metric height `ρ∞` computed exactly, ball subgroups, zero sets, and an
//! executable report of their structural properties.

pub mod checks;
pub mod derived;
pub mod group;

pub use checks::{check_theorems, Check, TheoremReport};
pub use derived::{
    ball_subgroup, brute_force_derived, classify_height, closed_ball_subgroup, rho1_exact, rho_inf_exact,
    zero_set, HeightClass,
};
pub use group::{format_group_file, parse_group_file, Group, HeightedGroup, DEFAULT_ORDER_CAP};
