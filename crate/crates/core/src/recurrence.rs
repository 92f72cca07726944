use crate::arith::LaurentPoly;
use crate::error::{Error, Result};

/// `P_k(z) = c1(z) P_{k-1}(z^r) + c2(z) P_{k-1}(-z^r) + c3(z) P_{k-1}(z^-r)
///  + c4(z) P_{k-1}(-z^-r)` with `P_0 = 1`.
///
/// Every coefficient has all exponents strictly between `-r` and `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    radix: u32,
    coeffs: [LaurentPoly; 4],
}

/// Argument of `P_{k-1}` in each recurrence slot: `(negated, inverted)`.
const SLOT_ARGS: [(bool, bool); 4] = [(false, false), (true, false), (false, true), (true, true)];

impl Recurrence {
    pub fn new(radix: u32, coeffs: [LaurentPoly; 4]) -> Result<Self> {
        if radix < 2 {
            return Err(Error::Radix(radix));
        }
        let r = radix as i64;
        for (i, c) in coeffs.iter().enumerate() {
            for (e, _) in c.terms() {
                if e <= -r || e >= r {
                    return Err(Error::DegreeBound { index: i + 1, exponent: e, radix });
                }
            }
        }
        Ok(Self { radix, coeffs })
    }

    /// The Rudin-Shapiro recurrence `P_k(z) = P_{k-1}(z^2) + z P_{k-1}(-z^2)`.
    pub fn classic() -> Self {
        Self {
            radix: 2,
            coeffs: [LaurentPoly::one(), LaurentPoly::monomial(1, 1), LaurentPoly::zero(), LaurentPoly::zero()],
        }
    }

    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn coeffs(&self) -> &[LaurentPoly; 4] {
        &self.coeffs
    }

    pub fn is_classic(&self) -> bool {
        *self == Self::classic()
    }

    /// Applies the recurrence once: `P_k` from `P_{k-1}`.
    pub fn step(&self, prev: &LaurentPoly) -> LaurentPoly {
        let r = self.radix as i64;
        let mut out = LaurentPoly::zero();
        for (c, &(neg, inv)) in self.coeffs.iter().zip(&SLOT_ARGS) {
            if c.is_zero() {
                continue;
            }
            let arg = prev.substitute(neg, if inv { -r } else { r });
            out = &out + &(c * &arg);
        }
        out
    }

    /// `P_k` for this recurrence.
    pub fn poly(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |p, _| self.step(&p))
    }

    /// Writes `P_k(g(z))` for `g(z) = (-1)^neg * z^(+-1)` as a combination of
    /// the four level-(k-1) factors evaluated at `w = z^r`.
    ///
    /// Returns, for each target factor in the order a, A, b, B, its Laurent
    /// polynomial coefficient in `z`.
    pub fn substitution(&self, neg: bool, inv: bool) -> [LaurentPoly; 4] {
        let power = if inv { -1 } else { 1 };
        let odd_radix = self.radix % 2 == 1;
        let mut out: [LaurentPoly; 4] = Default::default();
        for (c, &(slot_neg, slot_inv)) in self.coeffs.iter().zip(&SLOT_ARGS) {
            if c.is_zero() {
                continue;
            }
            // slot argument at g(z): (+-1) * ((-1)^neg z^power)^(+-r)
            let target_neg = slot_neg ^ (neg && odd_radix);
            let target_inv = slot_inv ^ inv;
            let idx = match (target_neg, target_inv) {
                (false, false) => crate::monomial::sym::A_LOW,
                (false, true) => crate::monomial::sym::A_UP,
                (true, false) => crate::monomial::sym::B_LOW,
                (true, true) => crate::monomial::sym::B_UP,
            };
            let coeff = c.substitute(neg, power);
            out[idx] = &out[idx] + &coeff;
        }
        out
    }
}

impl Default for Recurrence {
    fn default() -> Self {
        Self::classic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_polys() {
        let rec = Recurrence::classic();
        assert_eq!(rec.poly(0), LaurentPoly::one());
        assert_eq!(rec.poly(1), LaurentPoly::from_dense(0, &[1, 1]));
        assert_eq!(rec.poly(2), LaurentPoly::from_dense(0, &[1, 1, 1, -1]));
        assert_eq!(rec.poly(3), LaurentPoly::from_dense(0, &[1, 1, 1, -1, 1, 1, -1, 1]));
    }

    #[test]
    fn classic_rewrite_rules() {
        let rec = Recurrence::classic();
        let one = LaurentPoly::one();
        let z = LaurentPoly::monomial(1, 1);
        let zi = LaurentPoly::monomial(1, -1);
        let zero = LaurentPoly::zero();
        // a -> a + z b
        assert_eq!(rec.substitution(false, false), [one.clone(), zero.clone(), z.clone(), zero.clone()]);
        // A -> A + z^-1 B
        assert_eq!(rec.substitution(false, true), [zero.clone(), one.clone(), zero.clone(), zi.clone()]);
        // b -> a - z b
        assert_eq!(rec.substitution(true, false), [one.clone(), zero.clone(), -z, zero.clone()]);
        // B -> A - z^-1 B
        assert_eq!(rec.substitution(true, true), [zero.clone(), one, zero, -zi]);
    }

    #[test]
    fn degree_window_is_enforced() {
        let bad = Recurrence::new(
            2,
            [LaurentPoly::monomial(1, 2), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero()],
        );
        assert_eq!(bad, Err(Error::DegreeBound { index: 1, exponent: 2, radix: 2 }));
        assert_eq!(Recurrence::new(1, Default::default()), Err(Error::Radix(1)));
        let ok = Recurrence::new(
            3,
            [LaurentPoly::one(), LaurentPoly::from_terms([(1, 1), (-1, 1)]), LaurentPoly::zero(), LaurentPoly::zero()],
        );
        assert!(ok.is_ok());
    }

    #[test]
    fn degenerate_recurrence_vanishes() {
        let rec = Recurrence::new(2, Default::default()).unwrap();
        assert!(rec.poly(1).is_zero());
        assert!(rec.poly(3).is_zero());
    }
}
