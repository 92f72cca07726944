//! Rational generating functions from sequence prefixes.
//!
//! A sequence that satisfies a linear recurrence of order at most `B` is
//! determined by its first `2B` terms. The shortest recurrence is found by
//! Berlekamp-Massey modulo word-size primes and lifted by Chinese remaindering
//! (an integer sequence with a rational generating function has an integral
//! reduced denominator). The lift is certified exactly over the integers; if
//! that never succeeds the rational-field algorithm is used instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use super::modp::{inv_mod, primes, reduce};
use super::ratfun::{lcm_of_denominators, RationalFunction};
use crate::error::{Error, Result};

/// Extra terms beyond `2 * order_bound` that every reconstruction must match.
pub const GUARD_TERMS: usize = 8;

/// Shortest connection polynomial `C` (with `C(0) = 1`) such that
/// `sum_j C_j s_{i-j} = 0` for all `i >= L`; returns `(C, L)`.
pub fn berlekamp_massey(seq: &[BigRational]) -> (Vec<BigRational>, usize) {
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut len = 0usize;
    let mut gap = 1usize;
    let mut last_delta = BigRational::one();

    for i in 0..seq.len() {
        let mut delta = seq[i].clone();
        for j in 1..=len.min(c.len() - 1) {
            if !c[j].is_zero() {
                delta += &c[j] * &seq[i - j];
            }
        }
        if delta.is_zero() {
            gap += 1;
            continue;
        }
        let scale = &delta / &last_delta;
        let prev = c.clone();
        if c.len() < b.len() + gap {
            c.resize(b.len() + gap, BigRational::zero());
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                c[j + gap] -= &scale * bj;
            }
        }
        if 2 * len <= i {
            len = i + 1 - len;
            b = prev;
            last_delta = delta;
            gap = 1;
        } else {
            gap += 1;
        }
    }
    while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    (c, len)
}

/// Berlekamp-Massey over `GF(p)`; same contract as [`berlekamp_massey`].
fn berlekamp_massey_mod(seq: &[u64], p: u64) -> (Vec<u64>, usize) {
    let mut c = vec![1u64];
    let mut b = vec![1u64];
    let mut len = 0usize;
    let mut gap = 1usize;
    let mut last_delta = 1u64;
    for i in 0..seq.len() {
        let mut delta = seq[i];
        for j in 1..=len.min(c.len() - 1) {
            delta = (delta + c[j] * seq[i - j]) % p;
        }
        if delta == 0 {
            gap += 1;
            continue;
        }
        let scale = delta * inv_mod(last_delta, p) % p;
        let prev = c.clone();
        if c.len() < b.len() + gap {
            c.resize(b.len() + gap, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            c[j + gap] = (c[j + gap] + p - scale * bj % p) % p;
        }
        if 2 * len <= i {
            len = i + 1 - len;
            b = prev;
            last_delta = delta;
            gap = 1;
        } else {
            gap += 1;
        }
    }
    (c, len)
}

/// True when `sum_j conn_j s_{i-j} = 0` for every `i >= len`.
fn annihilates(conn: &[BigInt], len: usize, seq: &[BigInt]) -> bool {
    (len..seq.len()).all(|i| {
        let mut acc = BigInt::zero();
        for (j, cj) in conn.iter().enumerate().take(i + 1) {
            if !cj.is_zero() {
                acc += cj * &seq[i - j];
            }
        }
        acc.is_zero()
    })
}

/// Integral shortest connection polynomial via modular Berlekamp-Massey.
/// `None` when no lift certifies within `max_primes` primes.
fn connection_multimodular(seq: &[BigInt], max_primes: usize) -> Option<(Vec<BigInt>, usize)> {
    let mut best_len = 0usize;
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = Vec::new();
    let mut last_lift: Option<Vec<BigInt>> = None;
    for p in primes().take(max_primes) {
        let pb = BigInt::from(p);
        let reduced: Vec<u64> = seq.iter().map(|x| reduce(x, p)).collect();
        let (conn, len) = berlekamp_massey_mod(&reduced, p);
        if len < best_len {
            // p divides a discriminating quantity; its image is degenerate
            continue;
        }
        if len > best_len || residues.is_empty() {
            best_len = len;
            modulus = BigInt::one();
            residues = vec![BigInt::zero(); len + 1];
            last_lift = None;
        }
        // CRT: x' = x + M * ((r - x) * M^-1 mod p)
        let m_inv = BigInt::from(inv_mod(reduce(&modulus, p), p));
        for (j, slot) in residues.iter_mut().enumerate() {
            let r = BigInt::from(conn.get(j).copied().unwrap_or(0));
            let t = ((r - &*slot) * &m_inv).mod_floor(&pb);
            *slot += &modulus * t;
        }
        modulus *= &pb;
        let half = &modulus >> 1;
        let lift: Vec<BigInt> = residues.iter().map(|x| if x > &half { x - &modulus } else { x.clone() }).collect();
        if last_lift.as_ref() == Some(&lift) && annihilates(&lift, best_len, seq) {
            return Some((lift, best_len));
        }
        last_lift = Some(lift);
    }
    None
}

/// Upper bound on primes tried before falling back to rational arithmetic.
const MAX_PRIMES: usize = 512;

/// Recovers the rational function of denominator degree at most `order_bound`
/// whose Taylor series begins with `seq`.
///
/// Requires `seq.len() >= 2 * order_bound + GUARD_TERMS`. The returned
/// function is in normal form and reproduces every supplied term.
pub fn reconstruct_rational(seq: &[BigInt], order_bound: usize) -> Result<RationalFunction> {
    let needed = 2 * order_bound + GUARD_TERMS;
    if seq.len() < needed {
        return Err(Error::TooFewTerms { order_bound, needed, got: seq.len() });
    }
    let failure = Error::Reconstruction { order_bound, terms: seq.len() };
    let (num, den) = match connection_multimodular(seq, MAX_PRIMES) {
        Some((conn, len)) => {
            if len > order_bound {
                return Err(failure);
            }
            let num =
                (0..len).map(|k| conn.iter().enumerate().take(k + 1).map(|(j, cj)| cj * &seq[k - j]).sum()).collect();
            (IntPoly::new(num), IntPoly::new(conn))
        }
        None => rational_connection(seq, order_bound).ok_or_else(|| failure.clone())?,
    };
    let rf = RationalFunction::normalize(num, den).map_err(|_| failure.clone())?;
    if rf.den().degree().unwrap_or(0) > order_bound || rf.series(seq.len()) != seq {
        return Err(failure);
    }
    Ok(rf)
}

/// Numerator and denominator from Berlekamp-Massey over the rationals.
fn rational_connection(seq: &[BigInt], order_bound: usize) -> Option<(IntPoly, IntPoly)> {
    let rseq: Vec<BigRational> = seq.iter().cloned().map(BigRational::from_integer).collect();
    let (conn, len) = berlekamp_massey(&rseq);
    if len > order_bound {
        return None;
    }
    // numerator = (C * S) mod t^len
    let mut num = vec![BigRational::zero(); len];
    for (k, slot) in num.iter_mut().enumerate() {
        for (j, cj) in conn.iter().enumerate().take(k + 1) {
            if !cj.is_zero() {
                *slot += cj * &rseq[k - j];
            }
        }
    }
    let scale = BigRational::from_integer(lcm_of_denominators(&conn).lcm(&lcm_of_denominators(&num)));
    let lift = |v: &[BigRational]| IntPoly::new(v.iter().map(|x| (x * &scale).to_integer()).collect());
    Some((lift(&num), lift(&conn)))
}
