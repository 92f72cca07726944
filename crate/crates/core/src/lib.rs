//! Exact constant-term moments of Rudin-Shapiro-type polynomials.
//!
//! Sequences `CT[z^e P(z)^i P(1/z)^j P(-z)^k P(-1/z)^l]` are turned into finite
//! linear transition systems by repeatedly applying the defining recurrence,
//! from which exact rational generating functions follow. Brute-force
//! evaluation, spectral checks on the important-monomial matrix and the
//! false-pretender census sit on top.

pub mod arith;
pub mod error;
pub mod monomial;
pub mod oracle;
pub mod pretenders;
pub mod recurrence;
pub mod roots;
pub mod scheme;
pub mod spectra;

pub use arith::{IntPoly, LaurentPoly, Rational, RationalFunction};
pub use error::{Error, Result};
pub use monomial::{Monomial, Term};
pub use recurrence::Recurrence;
pub use scheme::{build_scheme, moment_genfun, TransitionSystem, DEFAULT_CAP};
