//! Exact arithmetic: integers, rationals, cyclotomic numbers and finite fields.

pub mod arith;
pub mod cyclotomic;
pub mod finite_field;
pub mod rational;
pub mod reduction;

pub use arith::valuation;
pub use cyclotomic::{Cyclotomic, CyclotomicField};
pub use finite_field::{FFElement, GaloisField};
pub use rational::Rational;
pub use reduction::{build_reduction_map, build_reduction_map_with_factor, ReductionMap};
