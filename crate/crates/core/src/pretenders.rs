//! Important monomials `(aA)^m (bB)^(n-m)` and the unimportant states
//! ("false pretenders") whose one-step rewrite still reaches one of them.
//!
//! Scheme states are orbit representatives under `z -> -z` and `z -> 1/z`.
//! Pretenders are counted as monomials up to conjugation `z -> 1/z` only, so
//! each state contributes one or two entries.

use crate::error::Result;
use crate::monomial::{Monomial, Term};
use crate::recurrence::Recurrence;
use crate::scheme::build_closure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Important,
    Unimportant,
}

/// Important iff the orbit of `mono` contains `(aA)^m (bB)^(n-m)` for some `m`.
pub fn classify(mono: Monomial, n: u32) -> Class {
    let c = Term::new(1, mono).canonicalize().mono;
    let [a, big_a, b, big_b] = c.pow;
    if c.z == 0 && a == big_a && b == big_b && a + b == n {
        Class::Important
    } else {
        Class::Unimportant
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretenderCensus {
    pub n: u32,
    /// States in the closure of all important seeds.
    pub universe_size: usize,
    pub important_count: usize,
    /// Unimportant monomials with a nonzero important child, one per
    /// conjugation class, grouped by state in discovery order.
    pub false_pretenders: Vec<Monomial>,
    /// The scheme states behind `false_pretenders`.
    pub pretender_states: Vec<Monomial>,
    pub expected_count: usize,
}

impl PretenderCensus {
    pub fn matches(&self) -> bool {
        self.false_pretenders.len() == self.expected_count
    }
}

/// One member of each `{x, x(1/z)}` pair inside the orbit of `state`,
/// the state itself first.
pub fn conjugation_classes(state: Monomial) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (x, _) in state.orbit() {
        if !out.iter().any(|&y| y == x || y == x.invert_z()) {
            out.push(x);
        }
    }
    out
}

/// `(n/2)^2 - 1` for even `n`, `(n^2 - 1)/4` for odd `n`.
pub fn expected_count(n: u32) -> usize {
    let n = n as usize;
    if n.is_multiple_of(2) {
        (n / 2) * (n / 2) - 1
    } else {
        (n * n - 1) / 4
    }
}

/// Classifies every state reachable from the `n+1` important seeds under
/// the classic recurrence.
pub fn census(n: u32, cap: usize) -> Result<PretenderCensus> {
    census_with(n, &Recurrence::classic(), cap)
}

pub fn census_with(n: u32, rec: &Recurrence, cap: usize) -> Result<PretenderCensus> {
    let seeds: Vec<Monomial> = (0..=n).map(|m| Monomial::important(m, n)).collect();
    let sys = build_closure(&seeds, rec, cap)?;
    let important: Vec<bool> = sys.states().iter().map(|&s| classify(s, n) == Class::Important).collect();
    let pretender_states: Vec<Monomial> = sys
        .states()
        .iter()
        .enumerate()
        .filter(|&(i, _)| !important[i] && sys.row(i).iter().any(|(_, j)| important[*j]))
        .map(|(_, &s)| s)
        .collect();
    let false_pretenders = pretender_states.iter().flat_map(|&s| conjugation_classes(s)).collect();
    Ok(PretenderCensus {
        n,
        universe_size: sys.len(),
        important_count: important.iter().filter(|&&x| x).count(),
        false_pretenders,
        pretender_states,
        expected_count: expected_count(n),
    })
}
