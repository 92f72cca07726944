//! Exact arithmetic: Laurent and integer polynomials, normalized rational
//! functions, characteristic polynomials and rational reconstruction.

pub mod charpoly;
pub mod intpoly;
pub mod laurent;
mod modp;
pub mod ratfun;
pub mod reconstruct;

pub use charpoly::{charpoly, determinant, IntMatrix};
pub use intpoly::IntPoly;
pub use laurent::LaurentPoly;
pub use ratfun::RationalFunction;
pub use reconstruct::{reconstruct_rational, GUARD_TERMS};

/// Exact rational number with positive reduced denominator.
pub type Rational = num_rational::BigRational;
