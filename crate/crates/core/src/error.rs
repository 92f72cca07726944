use thiserror::Error;

/// Errors raised by the moment engine and its verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The transition system grew past the configured state cap. Retrying
    /// with a larger cap may succeed.
    #[error("FAIL: scheme exceeded {cap} states (reached {reached}); retry with a larger cap")]
    Capacity { cap: usize, reached: usize },

    /// A brute-force constant-term evaluation would exceed its operation budget.
    #[error("brute-force evaluation needs ~{estimated} operations, budget is {budget}")]
    Budget { estimated: u128, budget: u128 },

    /// No linear recurrence of the requested order fits the sequence.
    #[error("no rational function with denominator degree <= {order_bound} fits the {terms} supplied terms")]
    Reconstruction { order_bound: usize, terms: usize },

    /// Too few terms to determine a rational function of the requested order.
    #[error("need at least {needed} terms for order bound {order_bound}, got {got}")]
    TooFewTerms { order_bound: usize, needed: usize, got: usize },

    /// A rational function denominator vanishes at t = 0.
    #[error("denominator vanishes at t = 0")]
    SingularDenominator,

    /// The rational function has no normal form with integer coefficients and den(0) = 1.
    #[error("rational function has no integral normal form with den(0) = 1")]
    NonIntegralNormalForm,

    /// A polynomial division that was required to be exact left a remainder.
    #[error("inexact polynomial division")]
    InexactDivision,

    /// Recurrence coefficients violate the degree window (-r, r).
    #[error("recurrence coefficient c{index} has exponent {exponent} outside ({lo}, {hi})", lo = -(*radix as i64), hi = *radix)]
    DegreeBound { index: usize, exponent: i64, radix: u32 },

    /// Recurrence radix below 2.
    #[error("radix must be at least 2, got {0}")]
    Radix(u32),

    /// The expected dominant pole at t = 2^-n is missing.
    #[error("denominator does not vanish at t = 1/2^{n}")]
    Dominance { n: u32 },

    /// The dominant pole is not simple.
    #[error("t = 1/2^{n} is a multiple root of the denominator")]
    Multiplicity { n: u32 },

    /// A caller-side precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
