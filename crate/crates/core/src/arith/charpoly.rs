//! Exact characteristic polynomials of integer matrices.
//!
//! `det(xI - M)` is evaluated at the integer points `0..=n` with fraction-free
//! Bareiss elimination, then interpolated through the Newton forward-difference
//! basis. For an integer polynomial the k-th forward difference at 0 is
//! divisible by `k!`, so every step stays in the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;

/// Square matrix over the integers, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Determinant by Bareiss elimination with row pivoting.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = exact_quo(&v, &prev);
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign_flip {
        -d
    } else {
        d
    }
}

/// Monic characteristic polynomial `det(xI - M)`.
pub fn charpoly(m: &IntMatrix) -> IntPoly {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");

    let values: Vec<BigInt> = (0..=n)
        .map(|x| {
            let x = BigInt::from(x);
            let shifted: IntMatrix = m
                .iter()
                .enumerate()
                .map(|(i, row)| row.iter().enumerate().map(|(j, v)| if i == j { &x - v } else { -v }).collect())
                .collect();
            determinant(&shifted)
        })
        .collect();

    // forward differences: diffs[k] = Δ^k f(0)
    let mut diffs = Vec::with_capacity(n + 1);
    let mut row = values;
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // f(x) = sum_k (Δ^k f(0) / k!) * x (x-1) ... (x-k+1)
    let mut result = IntPoly::zero();
    let mut falling = IntPoly::one();
    let mut factorial = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            factorial *= k;
            falling = &falling * &IntPoly::linear_root(BigInt::from(k - 1));
        }
        let c = exact_quo(d, &factorial);
        result = &result + &falling.scale(&c);
    }
    result
}

fn exact_quo(a: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(d);
    debug_assert!(r.is_zero(), "division must be exact");
    q
}

/// `p(M)` by Horner's rule.
pub fn eval_at_matrix(p: &IntPoly, m: &IntMatrix) -> IntMatrix {
    let n = m.len();
    let mut acc: IntMatrix = vec![vec![BigInt::zero(); n]; n];
    for c in p.coeffs().iter().rev() {
        let mut next = mat_mul(&acc, m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += c;
        }
        acc = next;
    }
    acc
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let p = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigInt::zero(); p]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = &a[i][k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..p {
                out[i][j] += aik * &bk[j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_charpolys() {
        assert_eq!(charpoly(&mat(&[&[1, 1], &[1, 1]])), IntPoly::from_i64(&[0, -2, 1]));
        assert_eq!(charpoly(&mat(&[&[5]])), IntPoly::from_i64(&[-5, 1]));
        assert_eq!(charpoly(&mat(&[&[1, 4, 1], &[1, 0, 1], &[1, 4, 1]])), IntPoly::from_i64(&[0, -8, -2, 1]));
        assert_eq!(charpoly(&Vec::new()), IntPoly::one());
    }

    #[test]
    fn determinant_needs_pivoting() {
        assert_eq!(determinant(&mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(&mat(&[&[0, 0], &[1, 0]])), BigInt::zero());
        assert_eq!(determinant(&mat(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])), BigInt::from(4));
    }

    #[test]
    fn cayley_hamilton_on_fixed_matrix() {
        let m = mat(&[&[3, -2, 7, 0], &[1, 0, 0, 5], &[-4, 2, 2, 2], &[0, 9, -1, 1]]);
        let p = charpoly(&m);
        assert!(eval_at_matrix(&p, &m).iter().flatten().all(Zero::is_zero));
    }
}
