//! Transition systems for constant-term moment sequences.

pub mod rewrite;
pub mod system;

pub use rewrite::{canonicalize_comb, rewrite_step, LinComb, Rewriter};
pub use system::{build_closure, build_scheme, moment_genfun, TransitionSystem, DEFAULT_CAP};
