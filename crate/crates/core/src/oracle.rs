//! Brute-force ground truth: explicit polynomials and constant terms,
//! independent of the scheme engine.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::recurrence::Recurrence;

/// Default operation budget for one brute-force evaluation.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

/// `P_k` for the given recurrence, built by direct iteration.
pub fn rs_poly(k: u32, rec: &Recurrence) -> LaurentPoly {
    rec.poly(k)
}

/// The four factors `P(z), P(1/z), P(-z), P(-1/z)` in symbol order.
fn factors(p: &LaurentPoly) -> [LaurentPoly; 4] {
    let inv = p.reflect();
    [p.clone(), inv.clone(), p.negate_arg(), inv.negate_arg()]
}

fn span(p: &LaurentPoly) -> u128 {
    match (p.low_degree(), p.degree()) {
        (Some(lo), Some(hi)) => (hi - lo + 1) as u128,
        _ => 0,
    }
}

/// Estimated cost of multiplying `parts` left to right: the sum of
/// `|acc| * |factor|`, with `|acc|` bounded by its span.
fn product_cost(parts: &[&LaurentPoly]) -> u128 {
    let mut acc_span = 1u128;
    let mut cost = 0u128;
    for p in parts {
        let s = span(p).max(1);
        cost += acc_span * p.len().max(1) as u128;
        acc_span += s - 1;
    }
    cost
}

fn product(parts: &[&LaurentPoly]) -> LaurentPoly {
    parts.iter().fold(LaurentPoly::one(), |acc, p| &acc * *p)
}

fn check_budget(estimated: u128, budget: u128) -> Result<()> {
    if estimated > budget {
        return Err(Error::Budget { estimated, budget });
    }
    Ok(())
}

/// `E[mono](k)` by expanding the whole product and reading off its constant
/// term (the last factor is folded in with a constant-term-only product).
pub fn ct_moment_brute(mono: Monomial, k: u32, rec: &Recurrence, budget: u128) -> Result<BigInt> {
    let f = factors(&rs_poly(k, rec));
    let mut parts: Vec<&LaurentPoly> = Vec::new();
    for (i, &e) in mono.pow.iter().enumerate() {
        parts.extend(std::iter::repeat_n(&f[i], e as usize));
    }
    let shift = LaurentPoly::monomial(1, mono.z);
    let Some((last, init)) = parts.split_last() else {
        return Ok(shift.ct());
    };
    check_budget(product_cost(init) + last.len() as u128, budget)?;
    let acc = product(init).shift(mono.z);
    Ok(acc.ct_of_product(last))
}

/// `E[mono](k)` as a correlation `sum_j F_j G_j` where
/// `F = z^e P(z)^i P(-z)^k` and `G = P(z)^j P(-z)^l`, so that the
/// `1/z` factors never have to be multiplied into `F`.
pub fn ct_moment_correlation(mono: Monomial, k: u32, rec: &Recurrence, budget: u128) -> Result<BigInt> {
    let f = factors(&rs_poly(k, rec));
    let [a, _, b, _] = &f;
    let [i, j, kk, l] = mono.pow.map(|e| e as usize);
    let left: Vec<&LaurentPoly> = std::iter::repeat_n(a, i).chain(std::iter::repeat_n(b, kk)).collect();
    let right: Vec<&LaurentPoly> = std::iter::repeat_n(a, j).chain(std::iter::repeat_n(b, l)).collect();
    check_budget(product_cost(&left) + product_cost(&right), budget)?;
    let lp = product(&left).shift(mono.z);
    let rp = product(&right);
    // CT[F(z) G(1/z)] = sum_e F_e G_e
    Ok(lp.ct_of_product(&rp.reflect()))
}

/// Checks `P(z)P(1/z) + P(-z)P(-1/z) = 2^(k+1)` for the classic polynomial,
/// computing every lag of both autocorrelation products.
pub fn parseval_check(k: u32) -> bool {
    let p = rs_poly(k, &Recurrence::classic());
    let Some(deg) = p.degree() else { return false };
    let len = deg as usize + 1;
    let a: Vec<i64> = (0..len as i64).map(|e| i64::try_from(p.coeff(e)).unwrap_or(i64::MAX)).collect();
    if a.iter().any(|c| c.abs() > 1) {
        return false;
    }
    let b: Vec<i64> = a.iter().enumerate().map(|(e, &c)| if e % 2 == 0 { c } else { -c }).collect();
    let target = BigInt::one() << (k + 1);
    let lag_sum = |lag: usize| -> i64 { (0..len - lag).map(|j| a[j + lag] * a[j] + b[j + lag] * b[j]).sum() };
    // lags d and -d give equal coefficients, so d >= 0 suffices
    if BigInt::from(lag_sum(0)) != target {
        return false;
    }
    (1..len).into_par_iter().all(|lag| lag_sum(lag) == 0)
}

/// True when every coefficient of `p` is `+-1` and `p` has `2^k` of them on degrees `0..2^k`.
pub fn is_unimodular_of_length(p: &LaurentPoly, k: u32) -> bool {
    let len = 1i64 << k;
    p.len() as i64 == len
        && p.low_degree() == Some(0)
        && p.degree() == Some(len - 1)
        && p.terms().all(|(_, c)| c.magnitude() == &num_bigint::BigUint::one())
}

/// Sum of `C(n,m) E[(aA)^m (bB)^(n-m)](k)` over `m`, for the conservation law.
pub fn conservation_sum(n: u32, k: u32, rec: &Recurrence, budget: u128) -> Result<BigInt> {
    let mut total = BigInt::zero();
    let mut binom = BigInt::one();
    for m in 0..=n {
        let v = ct_moment_correlation(Monomial::important(m, n), k, rec, budget)?;
        total += &binom * v;
        binom = binom * (n - m) / (m + 1);
    }
    Ok(total)
}
