use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::rewrite::Rewriter;
use crate::arith::{reconstruct_rational, RationalFunction, GUARD_TERMS};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Term};
use crate::recurrence::Recurrence;

/// Default state cap for scheme construction.
pub const DEFAULT_CAP: usize = 1000;

/// Rows with at least this many states are multiplied in parallel.
const PARALLEL_ROWS: usize = 64;

/// The finite first-order system `E(k) = A E(k-1)`, `E(0) = v` over
/// canonical monomials discovered from a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    states: Vec<Monomial>,
    rows: Vec<Vec<(BigInt, usize)>>,
    init: Vec<BigInt>,
    seed: Monomial,
    seed_coeff: BigInt,
}

impl TransitionSystem {
    pub fn states(&self) -> &[Monomial] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Sparse row of state `s`: `(coefficient, target)` pairs.
    pub fn row(&self, s: usize) -> &[(BigInt, usize)] {
        &self.rows[s]
    }

    pub fn init(&self) -> &[BigInt] {
        &self.init
    }

    /// The monomial the system was built for (before canonicalization).
    pub fn seed(&self) -> Monomial {
        self.seed
    }

    /// `E[seed] = seed_coeff * E[states[0]]`: `+-1`, or 0 for a self-cancelling seed.
    pub fn seed_coeff(&self) -> &BigInt {
        &self.seed_coeff
    }

    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.states.iter().position(|&s| s == m)
    }

    /// Dense copy of the transition matrix.
    pub fn dense_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.len();
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, j) in row {
                out[i][*j] = c.clone();
            }
        }
        out
    }

    /// `E[state](k)` for every state and `k = 0..=k_max`.
    pub fn iterate_all(&self, k_max: usize) -> Vec<Vec<BigInt>> {
        let mut out = Vec::with_capacity(k_max + 1);
        let mut cur = self.init.clone();
        let small = self.small_rows();
        for _ in 0..k_max {
            let next = self.apply(&cur, small.as_deref());
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
        out
    }

    /// Exact values `E[seed](0..=k_max)`.
    pub fn iterate_sequence(&self, k_max: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(k_max + 1);
        let mut cur = self.init.clone();
        let small = self.small_rows();
        for k in 0..=k_max {
            out.push(&self.seed_coeff * &cur[0]);
            if k < k_max {
                cur = self.apply(&cur, small.as_deref());
            }
        }
        out
    }

    /// Machine-word copy of the rows when every coefficient fits.
    fn small_rows(&self) -> Option<Vec<Vec<(i64, usize)>>> {
        self.rows.iter().map(|row| row.iter().map(|(c, j)| c.to_i64().map(|c| (c, *j))).collect()).collect()
    }

    fn apply(&self, cur: &[BigInt], small: Option<&[Vec<(i64, usize)>]>) -> Vec<BigInt> {
        let eval_small = |row: &Vec<(i64, usize)>| {
            let mut acc = BigInt::zero();
            for &(c, j) in row {
                if !cur[j].is_zero() {
                    acc += &cur[j] * c;
                }
            }
            acc
        };
        let eval_big = |row: &Vec<(BigInt, usize)>| {
            let mut acc = BigInt::zero();
            for (c, j) in row {
                acc += &cur[*j] * c;
            }
            acc
        };
        let parallel = self.len() >= PARALLEL_ROWS;
        match (small, parallel) {
            (Some(rows), true) => rows.par_iter().map(eval_small).collect(),
            (Some(rows), false) => rows.iter().map(eval_small).collect(),
            (None, true) => self.rows.par_iter().map(eval_big).collect(),
            (None, false) => self.rows.iter().map(eval_big).collect(),
        }
    }

    /// Rational generating function `sum_k E[seed](k) t^k`.
    ///
    /// Iterates `2S + 8` terms (S = state count), reconstructs with order
    /// bound S and certifies the result against every iterated term.
    pub fn genfun(&self) -> Result<RationalFunction> {
        let s = self.len();
        let seq = self.iterate_sequence(2 * s + GUARD_TERMS - 1);
        reconstruct_rational(&seq, s)
    }
}

/// Breadth-first closure of the going-down step from a single seed.
pub fn build_scheme(seed: Monomial, rec: &Recurrence, cap: usize) -> Result<TransitionSystem> {
    let canon = Term::new(1, seed).canonicalize();
    let mut sys = build_closure(&[canon.mono], rec, cap)?;
    sys.seed = seed;
    sys.seed_coeff = canon.coeff;
    Ok(sys)
}

/// Breadth-first closure from several seeds (states `0..seeds.len()` are
/// the canonical seeds, deduplicated, in the given order).
pub fn build_closure(seeds: &[Monomial], rec: &Recurrence, cap: usize) -> Result<TransitionSystem> {
    if cap == 0 {
        return Err(Error::Precondition("state cap must be at least 1".into()));
    }
    let mut rewriter = Rewriter::new(rec);
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    let mut states = Vec::new();
    let mut queue = VecDeque::new();

    let mut admit = |m: Monomial, states: &mut Vec<Monomial>, queue: &mut VecDeque<usize>| -> Result<usize> {
        if let Some(&i) = index.get(&m) {
            return Ok(i);
        }
        let i = states.len();
        if i >= cap {
            return Err(Error::Capacity { cap, reached: i + 1 });
        }
        index.insert(m, i);
        states.push(m);
        queue.push_back(i);
        Ok(i)
    };

    for &s in seeds {
        let canon = Term::new(1, s).canonicalize().mono;
        admit(canon, &mut states, &mut queue)?;
    }

    let mut rows: Vec<Vec<(BigInt, usize)>> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let mono = states[i];
        // a self-cancelling orbit has identically zero constant term
        let children = if mono.canonical().is_none() { Default::default() } else { rewriter.rewrite(mono) };
        let mut row = Vec::with_capacity(children.len());
        for (child, c) in children {
            let j = admit(child, &mut states, &mut queue)?;
            row.push((c, j));
        }
        if rows.len() <= i {
            rows.resize_with(i + 1, Vec::new);
        }
        rows[i] = row;
    }

    let init = states
        .iter()
        .map(|m| if m.z == 0 && m.canonical().is_some() { BigInt::one() } else { BigInt::zero() })
        .collect();
    Ok(TransitionSystem { seed: states[0], seed_coeff: BigInt::one(), states, rows, init })
}

/// Generating function of `M_{m,n}(k) = CT[P_k(z)^m P_k(1/z)^n]`.
pub fn moment_genfun(m: u32, n: u32, rec: &Recurrence, cap: usize) -> Result<RationalFunction> {
    if m == 0 && n == 0 {
        return Err(Error::Precondition("m and n must not both be zero".into()));
    }
    build_scheme(Monomial::mixed_moment(m, n), rec, cap)?.genfun()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn first_moment_system() {
        let sys = build_scheme(Monomial::new(0, 1, 1, 0, 0), &Recurrence::classic(), 100).unwrap();
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.row(0), &[(BigInt::from(2), 0)]);
        assert_eq!(sys.init(), &ints(&[1])[..]);
        assert_eq!(sys.iterate_sequence(3), ints(&[1, 2, 4, 8]));
        let rf = sys.genfun().unwrap();
        assert_eq!(rf.den(), &IntPoly::from_i64(&[1, -2]));
    }

    #[test]
    fn second_moment_system() {
        let sys = build_scheme(Monomial::new(0, 2, 2, 0, 0), &Recurrence::classic(), 100).unwrap();
        assert_eq!(sys.iterate_sequence(4), ints(&[1, 6, 20, 88, 336]));
        let rf = sys.genfun().unwrap();
        assert_eq!(rf.num(), &IntPoly::from_i64(&[1, 4]));
        assert_eq!(rf.den(), &IntPoly::from_i64(&[1, -2, -8]));
    }

    #[test]
    fn third_moment_first_terms() {
        let sys = build_scheme(Monomial::new(0, 3, 3, 0, 0), &Recurrence::classic(), 100).unwrap();
        assert_eq!(sys.iterate_sequence(1), ints(&[1, 20]));
    }

    #[test]
    fn cap_is_enforced() {
        let err = build_scheme(Monomial::new(0, 2, 2, 0, 0), &Recurrence::classic(), 1).unwrap_err();
        assert!(matches!(err, Error::Capacity { cap: 1, .. }));
    }

    #[test]
    fn states_are_canonical_and_rows_clean() {
        let sys = build_scheme(Monomial::new(0, 3, 3, 0, 0), &Recurrence::classic(), 1000).unwrap();
        for (i, s) in sys.states().iter().enumerate() {
            assert!(s.is_canonical(), "{s}");
            assert_eq!(sys.init()[i], BigInt::from((s.z == 0) as i64));
            let row = sys.row(i);
            assert!(row.iter().all(|(c, _)| !c.is_zero()));
            let mut targets: Vec<_> = row.iter().map(|r| r.1).collect();
            targets.sort();
            targets.dedup();
            assert_eq!(targets.len(), row.len());
        }
    }

    #[test]
    fn signed_seed() {
        // z*b canonicalizes to -z*a
        let sys = build_scheme(Monomial::new(1, 0, 0, 1, 0), &Recurrence::classic(), 100).unwrap();
        assert_eq!(sys.seed_coeff(), &BigInt::from(-1));
        assert_eq!(sys.states()[0], Monomial::new(1, 1, 0, 0, 0));
    }

    #[test]
    fn degenerate_recurrence_terminates() {
        let rec = Recurrence::new(2, Default::default()).unwrap();
        let sys = build_scheme(Monomial::new(0, 2, 2, 0, 0), &rec, 10).unwrap();
        assert_eq!(sys.iterate_sequence(3), ints(&[1, 0, 0, 0]));
        assert_eq!(sys.genfun().unwrap().den(), &IntPoly::one());
    }

    #[test]
    fn deterministic_construction() {
        let a = build_scheme(Monomial::new(0, 3, 2, 0, 0), &Recurrence::classic(), 1000).unwrap();
        let b = build_scheme(Monomial::new(0, 3, 2, 0, 0), &Recurrence::classic(), 1000).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn moment_genfun_rejects_empty_seed() {
        assert!(moment_genfun(0, 0, &Recurrence::classic(), 10).is_err());
    }
}
