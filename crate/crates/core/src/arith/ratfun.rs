use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// A rational function `num(t) / den(t)` in normal form.
///
/// Normal form: `num` and `den` share no polynomial factor, `den(0) = 1`,
/// and all coefficients are integers. Two rational functions are equal iff
/// their normal forms are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    /// Brings `num / den` into normal form.
    ///
    /// Fails when `den(0) = 0`, or when the reduced fraction cannot be scaled
    /// to integer coefficients with `den(0) = 1`.
    pub fn normalize(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.coeff(0).is_zero() {
            return Err(Error::SingularDenominator);
        }
        if num.is_zero() {
            return Ok(Self { num, den: IntPoly::one() });
        }
        let g = if coprime_mod_p(&num, &den) { IntPoly::one() } else { num.gcd(&den) };
        let (num, den) = if g.degree() == Some(0) { (num, den) } else { (num.div_exact(&g)?, den.div_exact(&g)?) };
        let c = den.coeff(0);
        let num = num.div_exact_scalar(&c).map_err(|_| Error::NonIntegralNormalForm)?;
        let den = den.div_exact_scalar(&c).map_err(|_| Error::NonIntegralNormalForm)?;
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// First `n` Taylor coefficients at `t = 0`.
    ///
    /// With `den(0) = 1` the recursion `s_k = num_k - sum_{j>=1} den_j s_{k-j}`
    /// never divides, so the coefficients are integers.
    pub fn series(&self, n: usize) -> Vec<BigInt> {
        let den = self.den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = self.num.coeff(k);
            for (j, d) in den.iter().enumerate().skip(1).take(k) {
                if !d.is_zero() {
                    s -= d * &out[k - j];
                }
            }
            out.push(s);
        }
        out
    }

    /// Taylor coefficients as exact rationals.
    pub fn series_rational(&self, n: usize) -> Vec<BigRational> {
        self.series(n).into_iter().map(BigRational::from_integer).collect()
    }

    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(t);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(t) / d)
    }

    /// True when `self.num * den == num * self.den`, for comparing against a
    /// fraction that is not in normal form.
    pub fn cross_equals(&self, num: &IntPoly, den: &IntPoly) -> bool {
        &self.num * den == num * &self.den
    }

    /// Linear factors `(1 - lambda*t)` of the denominator with integer `lambda`,
    /// found from numerically located roots and confirmed by exact division.
    /// Returns the factors (with multiplicity) and the remaining cofactor.
    pub fn factor_denominator(&self) -> (Vec<BigInt>, IntPoly) {
        let mut lambdas = Vec::new();
        let mut rest = self.den.clone();
        while rest.degree().is_some_and(|d| d > 0) {
            let found = crate::roots::reciprocal_roots(&rest)
                .into_iter()
                .filter(|z| z.im.abs() < 1e-6 * z.norm().max(1.0))
                .filter_map(|z| {
                    let r = z.re.round();
                    (r.is_finite() && r != 0.0 && (z.re - r).abs() < 1e-3 * r.abs().max(1.0))
                        .then(|| BigInt::from(r as i128))
                })
                .find_map(|lambda| {
                    let factor = IntPoly::new(vec![BigInt::one(), -&lambda]);
                    rest.div_exact(&factor).ok().map(|q| (lambda, q))
                });
            match found {
                Some((lambda, q)) => {
                    lambdas.push(lambda);
                    rest = q;
                }
                None => break,
            }
        }
        (lambdas, rest)
    }

    /// Human-readable form with integer linear denominator factors pulled out.
    pub fn factored_display(&self) -> String {
        let (lambdas, rest) = self.factor_denominator();
        let mut parts: Vec<String> =
            lambdas.iter().map(|l| format!("({})", IntPoly::new(vec![BigInt::one(), -l]).display("t"))).collect();
        if rest.degree().unwrap_or(0) > 0 || parts.is_empty() {
            parts.push(format!("({})", rest.display("t")));
        }
        let den = if parts.len() == 1 { parts.remove(0) } else { format!("({})", parts.join("*")) };
        format!("({}) / {den}", self.num.display("t"))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Certifies coprimality: a prime not dividing either leading coefficient
/// maps a nonconstant common factor to a nonconstant common factor mod p.
/// `false` means "not certified", not "shares a factor".
fn coprime_mod_p(f: &IntPoly, g: &IntPoly) -> bool {
    super::modp::primes().take(3).any(|p| {
        let lead_ok = |x: &IntPoly| x.leading().is_some_and(|c| super::modp::reduce(c, p) != 0);
        lead_ok(f) && lead_ok(g) && super::modp::gcd_degree(f.coeffs(), g.coeffs(), p) == Some(0)
    })
}

/// Least common multiple of the denominators, used when lifting rational
/// coefficient vectors to integers.
pub(crate) fn lcm_of_denominators(values: &[BigRational]) -> BigInt {
    values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn normalizes_r2_with_common_scale() {
        let den = &p(&[2]) * &(&p(&[1, 2]) * &p(&[1, -4]));
        let rf = RationalFunction::normalize(p(&[2, 8]), den).unwrap();
        assert_eq!(rf.num(), &p(&[1, 4]));
        assert_eq!(rf.den(), &p(&[1, -2, -8]));
    }

    #[test]
    fn already_reduced_is_unchanged() {
        let rf = RationalFunction::normalize(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(rf.num(), &p(&[0, 1]));
        assert_eq!(rf.den(), &p(&[1, 1]));
    }

    #[test]
    fn cancels_exact_factor() {
        let rf = RationalFunction::normalize(p(&[1, 0, -4]), p(&[1, -2])).unwrap();
        assert_eq!(rf.num(), &p(&[1, 2]));
        assert_eq!(rf.den(), &p(&[1]));
    }

    #[test]
    fn rejects_vanishing_denominator() {
        assert_eq!(RationalFunction::normalize(p(&[1]), p(&[0, 1])), Err(Error::SingularDenominator));
        assert_eq!(RationalFunction::normalize(p(&[1]), p(&[2, 1])), Err(Error::NonIntegralNormalForm));
    }

    #[test]
    fn negative_overall_sign_is_absorbed() {
        let a = RationalFunction::normalize(p(&[-1, -4]), p(&[-1, 2, 8])).unwrap();
        let b = RationalFunction::normalize(p(&[1, 4]), p(&[1, -2, -8])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn series_examples() {
        let r1 = RationalFunction::normalize(p(&[1]), p(&[1, -2])).unwrap();
        assert_eq!(r1.series(4), ints(&[1, 2, 4, 8]));
        let r2 = RationalFunction::normalize(p(&[1, 4]), &p(&[1, 2]) * &p(&[1, -4])).unwrap();
        assert_eq!(r2.series(4), ints(&[1, 6, 20, 88]));
        let r3 = RationalFunction::normalize(p(&[1, 16]), &p(&[1, 4]) * &p(&[1, -8])).unwrap();
        assert_eq!(r3.series(2), ints(&[1, 20]));
    }

    #[test]
    fn factors_linear_pieces() {
        let r2 = RationalFunction::normalize(p(&[1, 4]), &p(&[1, 2]) * &p(&[1, -4])).unwrap();
        let (mut lambdas, rest) = r2.factor_denominator();
        lambdas.sort();
        assert_eq!(lambdas, ints(&[-2, 4]));
        assert_eq!(rest, p(&[1]));
        assert_eq!(r2.factored_display(), "(1 + 4*t) / ((1 + 2*t)*(1 - 4*t))");
    }
}
