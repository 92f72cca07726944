//! The important-monomial matrix `K_n`, its spectrum and eigenvector, the
//! dominant-pole residues of moment generating functions, and the
//! mixed-moment growth survey.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{charpoly, IntMatrix, IntPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::recurrence::Recurrence;
use crate::roots::max_reciprocal_root_modulus;
use crate::scheme::build_scheme;

/// Relative guard band for the floating-point root-modulus checks.
pub const ROOT_GUARD: f64 = 1e-6;

/// Window rule for mixed moments needs at least this many terms to be meaningful.
pub const MIN_CONFIDENT_KMAX: usize = 40;

fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        BigInt::zero()
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// `K_n(m, r) = (sum_i (-1)^i C(m, i) C(n-m, r-i))^2`.
pub fn k_entry(n: u32, m: u32, r: u32) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..=r.min(m) {
        let term = binom(m, i) * binom(n - m, r - i);
        if i % 2 == 0 {
            s += term;
        } else {
            s -= term;
        }
    }
    &s * &s
}

/// The `(n+1) x (n+1)` matrix of `K_n(m, r)`, rows indexed by `m`.
pub fn k_matrix(n: u32) -> IntMatrix {
    (0..=n).map(|m| (0..=n).map(|r| k_entry(n, m, r)).collect()).collect()
}

/// Nonzero eigenvalues of `K_n` from the product formula: `2^(n-4j) C(4j, 2j)`
/// for `0 <= j <= n/4` and `-2^(n-4j-2) C(4j+2, 2j+1)` for `0 <= j <= (n-2)/4`.
pub fn closed_form_eigenvalues(n: u32) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..=n / 4).map(|j| pow2(n - 4 * j) * binom(4 * j, 2 * j)).collect();
    if n >= 2 {
        out.extend((0..=(n - 2) / 4).map(|j| -(pow2(n - 4 * j - 2) * binom(4 * j + 2, 2 * j + 1))));
    }
    out
}

/// `z^floor((n+1)/2)` times the linear factors of [`closed_form_eigenvalues`].
pub fn closed_form_charpoly(n: u32) -> IntPoly {
    let mut roots = vec![BigInt::zero(); n.div_ceil(2) as usize];
    roots.extend(closed_form_eigenvalues(n));
    IntPoly::from_roots(&roots)
}

/// `det(zI - K_n)` computed exactly equals the closed-form product.
pub fn check_charpoly(n: u32) -> bool {
    charpoly(&k_matrix(n)) == closed_form_charpoly(n)
}

/// `sum_r K_n(m, r) / C(n, r) = 2^n / C(n, m)` for every row `m`.
pub fn check_eigenvector(n: u32) -> bool {
    let k = k_matrix(n);
    let top = BigRational::from_integer(pow2(n));
    (0..=n).all(|m| {
        let lhs: BigRational = (0..=n).map(|r| BigRational::new(k[m as usize][r as usize].clone(), binom(n, r))).sum();
        lhs == &top / BigRational::from_integer(binom(n, m))
    })
}

/// `2^n` is the unique eigenvalue of largest modulus in the closed form.
pub fn spectrum_dominated(n: u32) -> bool {
    let eig = closed_form_eigenvalues(n);
    let top = pow2(n);
    eig[0] == top && eig[1..].iter().all(|e| e.abs() < top)
}

/// Exact data of the simple pole of a rational function at `t = 2^-n`.
#[derive(Clone, Debug, PartialEq)]
pub struct DominantPole {
    /// `c` such that the coefficients grow like `c * (2^n)^k`.
    pub residue: BigRational,
    /// Every other reciprocal root has modulus below `2^n` by the guard band.
    pub dominant: bool,
}

/// Deflates `den = (1 - 2^n t) q` exactly and reads off `num(t0) / q(t0)`.
pub fn dominant_pole(n: u32, rf: &RationalFunction) -> Result<DominantPole> {
    let t0 = BigRational::new(BigInt::one(), pow2(n));
    if !rf.den().eval_rational(&t0).is_zero() {
        return Err(Error::Dominance { n });
    }
    let factor = IntPoly::new(vec![BigInt::one(), -pow2(n)]);
    let q = rf.den().div_exact(&factor).map_err(|_| Error::Dominance { n })?;
    let q0 = q.eval_rational(&t0);
    if q0.is_zero() {
        return Err(Error::Multiplicity { n });
    }
    let residue = rf.num().eval_rational(&t0) / q0;
    let bound = 2f64.powi(n as i32) * (1.0 - ROOT_GUARD);
    let dominant = q.degree().unwrap_or(0) == 0 || max_reciprocal_root_modulus(&q) < bound;
    Ok(DominantPole { residue, dominant })
}

/// Residue of `R_n` at its dominant pole against the value `2^n / (n+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SaffariReport {
    pub n: u32,
    pub genfun: RationalFunction,
    pub dominant_root_ok: bool,
    pub residue: BigRational,
    pub expected: BigRational,
    pub matches: bool,
}

/// `2^n / ((n+1) C(n, m))`.
pub fn expected_residue(n: u32, m: u32) -> BigRational {
    BigRational::new(pow2(n), BigInt::from(n + 1) * binom(n, m))
}

pub fn saffari_residue(n: u32, rf: &RationalFunction) -> Result<SaffariReport> {
    let pole = dominant_pole(n, rf)?;
    let expected = expected_residue(n, n);
    Ok(SaffariReport {
        n,
        genfun: rf.clone(),
        dominant_root_ok: pole.dominant,
        matches: pole.residue == expected,
        residue: pole.residue,
        expected,
    })
}

/// Residue at `t = 2^-n` of the generating function of
/// `CT[(aA)^m (bB)^(n-m)]` for the classic recurrence.
pub fn prop3_residue(n: u32, m: u32, cap: usize) -> Result<BigRational> {
    if m > n || n == 0 {
        return Err(Error::Precondition(format!("need 0 <= m <= n and n >= 1, got m={m}, n={n}")));
    }
    let rf = build_scheme(Monomial::important(m, n), &Recurrence::classic(), cap)?.genfun()?;
    Ok(dominant_pole(n, &rf)?.residue)
}

/// `M_n(k) (n+1) 2^(-n(k+1)) - 1` for the classic recurrence, `k = 0..=k_max`.
pub fn saffari_deviations(n: u32, k_max: usize, cap: usize) -> Result<Vec<BigRational>> {
    let seq = build_scheme(Monomial::mixed_moment(n, n), &Recurrence::classic(), cap)?.iterate_sequence(k_max);
    Ok(seq
        .into_iter()
        .enumerate()
        .map(|(k, v)| BigRational::new(v * (n + 1), pow2(n * (k as u32 + 1))) - BigRational::one())
        .collect())
}

/// Growth survey of `M_{m,n}(k)` against `2^((m+n)k/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MontgomeryReport {
    pub m: u32,
    pub n: u32,
    pub k_max: usize,
    pub genfun: RationalFunction,
    pub sequence: Vec<BigInt>,
    /// `rho_k = |M(k)| / 2^((m+n)k/2)`, or `rho_k^2` when `m+n` is odd.
    pub ratios: Vec<BigRational>,
    pub squared: bool,
    /// Late-window maximum below early-window maximum.
    pub window_ok: bool,
    /// Every reciprocal denominator root below `2^((m+n)/2)` by the guard band.
    pub root_ok: bool,
    /// `k_max` below [`MIN_CONFIDENT_KMAX`].
    pub low_confidence: bool,
}

impl MontgomeryReport {
    pub fn passed(&self) -> bool {
        self.window_ok && self.root_ok
    }

    /// `(max over [k_max-10, k_max], max over [0, 20])`.
    pub fn window_maxima(&self) -> (BigRational, BigRational) {
        let max_of = |lo: usize, hi: usize| {
            self.ratios[lo..=hi.min(self.k_max)].iter().cloned().max().unwrap_or_else(BigRational::zero)
        };
        (max_of(self.k_max.saturating_sub(10), self.k_max), max_of(0, 20))
    }
}

/// Heuristic check of `M_{m,n}(k) = o(2^((m+n)k/2))` for `m != n`.
pub fn montgomery_check(m: u32, n: u32, k_max: usize, cap: usize) -> Result<MontgomeryReport> {
    if m == n {
        return Err(Error::Precondition(format!("mixed moments need m != n, got m = n = {m}")));
    }
    let sys = build_scheme(Monomial::mixed_moment(m, n), &Recurrence::classic(), cap)?;
    let genfun = sys.genfun()?;
    let sequence = sys.iterate_sequence(k_max);
    let w = m + n;
    let squared = w % 2 == 1;
    let ratios = sequence
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let k = k as u32;
            if squared {
                BigRational::new(v * v, pow2(w * k))
            } else {
                BigRational::new(v.abs(), pow2(w / 2 * k))
            }
        })
        .collect();
    let bound = 2f64.powf(w as f64 / 2.0) * (1.0 - ROOT_GUARD);
    let root_ok = max_reciprocal_root_modulus(genfun.den()) < bound;
    let mut report = MontgomeryReport {
        m,
        n,
        k_max,
        genfun,
        sequence,
        ratios,
        squared,
        window_ok: false,
        root_ok,
        low_confidence: k_max < MIN_CONFIDENT_KMAX,
    };
    let (late, early) = report.window_maxima();
    report.window_ok = late < early;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> IntMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_k_matrices() {
        assert_eq!(k_matrix(1), ints(&[&[1, 1], &[1, 1]]));
        assert_eq!(k_matrix(2), ints(&[&[1, 4, 1], &[1, 0, 1], &[1, 4, 1]]));
        for n in 0..=12 {
            let k = k_matrix(n);
            for m in 0..=n as usize {
                assert!(k[m][0].is_one());
                for r in 0..=n as usize {
                    assert_eq!(k[m][r], k[n as usize - m][r]);
                    assert_eq!(k[m][r], k[m][n as usize - r]);
                }
            }
        }
    }

    #[test]
    fn closed_form_degrees() {
        assert_eq!(closed_form_charpoly(1), IntPoly::from_i64(&[0, -2, 1]));
        assert_eq!(closed_form_charpoly(2), IntPoly::from_i64(&[0, -8, -2, 1]));
        for n in 1..=30 {
            assert_eq!(closed_form_charpoly(n).degree(), Some(n as usize + 1), "n={n}");
        }
    }

    #[test]
    fn propositions_small() {
        for n in 1..=10 {
            assert!(check_charpoly(n), "charpoly n={n}");
            assert!(check_eigenvector(n), "eigenvector n={n}");
        }
    }

    #[test]
    fn top_eigenvalue_is_unique() {
        for n in 1..=50 {
            assert!(spectrum_dominated(n), "n={n}");
        }
    }

    #[test]
    fn saffari_small() {
        let r1 = RationalFunction::normalize(IntPoly::from_i64(&[1]), IntPoly::from_i64(&[1, -2])).unwrap();
        let rep = saffari_residue(1, &r1).unwrap();
        assert!(rep.matches && rep.dominant_root_ok);
        assert_eq!(rep.residue, q(1, 1));

        let r2 = RationalFunction::normalize(IntPoly::from_i64(&[1, 4]), IntPoly::from_i64(&[1, -2, -8])).unwrap();
        let rep = saffari_residue(2, &r2).unwrap();
        assert_eq!(rep.residue, q(4, 3));
        assert!(rep.matches && rep.dominant_root_ok);

        let r3 = RationalFunction::normalize(IntPoly::from_i64(&[1, 16]), IntPoly::from_i64(&[1, -4, -32])).unwrap();
        assert_eq!(saffari_residue(3, &r3).unwrap().residue, q(2, 1));
    }

    #[test]
    fn residue_errors() {
        let r1 = RationalFunction::normalize(IntPoly::from_i64(&[1]), IntPoly::from_i64(&[1, -2])).unwrap();
        assert_eq!(saffari_residue(2, &r1).unwrap_err(), Error::Dominance { n: 2 });
        let double = RationalFunction::normalize(IntPoly::from_i64(&[1]), IntPoly::from_i64(&[1, -4, 4])).unwrap();
        assert_eq!(saffari_residue(1, &double).unwrap_err(), Error::Multiplicity { n: 1 });
    }

    #[test]
    fn prop3_small() {
        assert_eq!(prop3_residue(1, 0, 100).unwrap(), q(1, 1));
        assert_eq!(prop3_residue(2, 1, 100).unwrap(), q(2, 3));
        assert_eq!(prop3_residue(2, 0, 100).unwrap(), q(4, 3));
        assert!(prop3_residue(2, 3, 100).is_err());
    }

    #[test]
    fn deviation_decays() {
        for n in 1..=5 {
            let d = saffari_deviations(n, 20, 1000).unwrap();
            assert!(d[20].abs() * BigRational::from_integer(2.into()) <= d[10].abs(), "n={n}");
        }
    }

    #[test]
    fn montgomery_small() {
        assert!(montgomery_check(1, 1, 40, 100).is_err());
        let rep = montgomery_check(1, 2, 60, 1000).unwrap();
        assert!(rep.squared && rep.passed() && !rep.low_confidence, "{rep:?}");
        let short = montgomery_check(1, 2, 10, 1000).unwrap();
        assert!(short.low_confidence);
    }

    #[test]
    fn root_checks_on_large_denominators() {
        // top reciprocal roots sit near 17.29 (bound 22.6) and 192.5 (bound
        // 256) in clusters that an unscaled companion matrix misplaces
        let rep = montgomery_check(4, 5, 40, 1000).unwrap();
        assert!(rep.root_ok);
        let r8 = build_scheme(Monomial::mixed_moment(8, 8), &Recurrence::classic(), 1000).unwrap().genfun().unwrap();
        assert!(dominant_pole(8, &r8).unwrap().dominant);
    }
}
