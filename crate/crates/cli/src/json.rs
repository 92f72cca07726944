//! Machine-readable generating functions. Every integer is a decimal string.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use shapiro_core::{IntPoly, RationalFunction, TransitionSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenfunJson {
    pub num: Vec<String>,
    pub den: Vec<String>,
    pub states: usize,
    pub seed: [i64; 5],
}

fn strings(p: &IntPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn parse_poly(v: &[String]) -> Result<IntPoly, String> {
    v.iter()
        .map(|s| s.parse::<BigInt>().map_err(|_| format!("not a decimal integer: {s:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(IntPoly::new)
}

impl GenfunJson {
    pub fn new(rf: &RationalFunction, sys: &TransitionSystem) -> Self {
        Self { num: strings(rf.num()), den: strings(rf.den()), states: sys.len(), seed: sys.seed().to_tuple() }
    }

    /// Re-normalized rational function described by this document.
    pub fn rational_function(&self) -> Result<RationalFunction, String> {
        RationalFunction::normalize(parse_poly(&self.num)?, parse_poly(&self.den)?).map_err(|e| e.to_string())
    }
}
