//! Floating-point root location, used only for reported dominance checks and
//! for suggesting candidate factors that are then confirmed exactly.

use nalgebra::linalg::Schur;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::arith::IntPoly;

/// `c * 2^-shift` as an `f64`, without overflowing on huge `c`.
fn scaled_f64(c: &BigInt, shift: i64) -> f64 {
    let bits = c.bits() as i64;
    let (m, extra) = if bits > 900 {
        let drop = bits - 60;
        ((c >> drop as usize).to_f64().unwrap(), drop)
    } else {
        (c.to_f64().unwrap(), 0)
    };
    m * 2f64.powi((extra - shift).clamp(-1070, 1020) as i32)
}

/// Values `lambda` with `p(t) = p(0) * prod(1 - lambda * t)`, i.e. the roots of
/// the reversed polynomial. Requires `p(0) != 0`.
pub fn reciprocal_roots(p: &IntPoly) -> Vec<Complex64> {
    let d = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return Vec::new(),
    };
    let c0 = p.coeff(0);
    assert!(!c0.is_zero(), "reciprocal roots need p(0) != 0");

    // lambda = 2^e * mu. Accuracy on clustered roots depends on the largest
    // |mu| being near 1: start from a bound that cannot overflow, then
    // rescale to the estimated largest modulus until the exponent settles.
    let log2 = |x: &BigInt| x.bits() as f64;
    let mut e = (1..=d).map(|k| (log2(&p.coeff(k)) - log2(&c0)) / k as f64).fold(0f64, f64::max).ceil() as i64;
    let mut roots = scaled_roots(p, e);
    for _ in 0..RESCALE_ROUNDS {
        let top = roots.iter().map(|z| z.norm()).fold(0f64, f64::max);
        if !(top.is_finite() && top > 0.0) {
            break;
        }
        let next = top.log2().round() as i64;
        if next == e {
            break;
        }
        e = next;
        roots = scaled_roots(p, e);
    }
    roots
}

const RESCALE_ROUNDS: usize = 8;

/// Reciprocal roots of `p` computed on the monic polynomial in `mu`, where
/// `lambda = 2^e * mu`.
fn scaled_roots(p: &IntPoly, e: i64) -> Vec<Complex64> {
    let d = p.degree().unwrap_or(0);
    let c0 = p.coeff(0);
    let c0_shift = c0.bits() as i64;
    let c0_mant = scaled_f64(&c0, c0_shift);

    // a[j] = coefficient of mu^j; p_k multiplies lambda^(d-k)
    let a: Vec<f64> = (0..d)
        .map(|j| {
            let k = d - j;
            scaled_f64(&p.coeff(k), c0_shift + e * k as i64) / c0_mant
        })
        .collect();

    let mut comp = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = 1.0;
    }
    for j in 0..d {
        comp[(j, d - 1)] = -a[j];
    }
    balance(&mut comp);
    let scale = 2f64.powi(e as i32);
    let mus: Vec<Complex64> = match Schur::try_new(comp, f64::EPSILON, SCHUR_MAX_ITER) {
        Some(schur) => schur.complex_eigenvalues().iter().copied().collect(),
        None => aberth(&a),
    };
    mus.into_iter().map(|mu| polish(&a, mu) * scale).collect()
}

/// Parlett-Reinsch balancing by powers of two. A similarity transform that
/// equalizes row and column norms; the companion matrices of moment
/// denominators are badly graded without it and lose every digit.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in (0..n).filter(|&j| j != i) {
                c += m[(j, i)].abs();
                r += m[(i, j)].abs();
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            while c < r / 2.0 {
                f *= 2.0;
                c *= 4.0;
            }
            while c >= r * 2.0 {
                f /= 2.0;
                c /= 4.0;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                m.row_mut(i).scale_mut(1.0 / f);
                m.column_mut(i).scale_mut(f);
            }
        }
    }
}

/// QR sweeps allowed before the eigenvalue route is abandoned; without a
/// limit the unshifted Francis iteration can cycle on equal-modulus roots.
const SCHUR_MAX_ITER: usize = 10_000;

/// `p(z)` and `p'(z)` for the monic polynomial with lower coefficients `a`.
fn eval_monic(a: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut f = Complex64::new(1.0, 0.0);
    let mut df = Complex64::zero();
    for &c in a.iter().rev() {
        df = df * z + f;
        f = f * z + c;
    }
    (f, df)
}

/// Aberth-Ehrlich simultaneous iteration for all roots of a monic polynomial.
fn aberth(a: &[f64]) -> Vec<Complex64> {
    let d = a.len();
    let radius = 1.0 + a.iter().fold(0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + 0.4)).collect();
    for _ in 0..2000 {
        let mut worst = 0f64;
        for k in 0..d {
            let (f, df) = eval_monic(a, z[k]);
            if f.norm() == 0.0 {
                continue;
            }
            let ratio = f / df;
            let repel: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repel);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                worst = worst.max(w.norm() / z[k].norm().max(1e-300));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

/// A few Newton steps on the scaled monic polynomial.
fn polish(a: &[f64], mut z: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (f, df) = eval_monic(a, z);
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
    }
    z
}

/// Largest modulus among the reciprocal roots (0 when there are none).
pub fn max_reciprocal_root_modulus(p: &IntPoly) -> f64 {
    reciprocal_roots(p).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
