use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sparse Laurent polynomial in one variable with exact integer coefficients.
///
/// Zero coefficients are never stored, so the zero polynomial is the empty map
/// and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * z^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients starting at `z^low`.
    pub fn from_dense(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Highest exponent, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest exponent, `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The constant term functional: coefficient of `z^0`.
    pub fn ct(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    /// Multiplies by `z^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&e, c)| (e + shift, c.clone())).collect() }
    }

    /// `p(sign * z^power)`: exponent `e` moves to `e * power` and picks up `sign^e`.
    pub fn substitute(&self, negate: bool, power: i64) -> Self {
        assert!(power != 0, "substitution power must be nonzero");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| {
                    let c = if negate && e.rem_euclid(2) == 1 { -c } else { c.clone() };
                    (e * power, c)
                })
                .collect(),
        }
    }

    /// `p(1/z)`.
    pub fn reflect(&self) -> Self {
        self.substitute(false, -1)
    }

    /// `p(-z)`.
    pub fn negate_arg(&self) -> Self {
        self.substitute(true, 1)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Largest coefficient magnitude in bits (0 for the zero polynomial).
    pub fn max_coeff_bits(&self) -> u64 {
        self.coeffs.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// `CT[self * other]` without forming the product.
    pub fn ct_of_product(&self, other: &Self) -> BigInt {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if fits_i128(small, large) {
            let mut acc: i128 = 0;
            for (&e, c) in &small.coeffs {
                if let Some(d) = large.coeffs.get(&-e) {
                    acc += c.to_i128().unwrap() * d.to_i128().unwrap();
                }
            }
            BigInt::from(acc)
        } else {
            let mut acc = BigInt::zero();
            for (&e, c) in &small.coeffs {
                if let Some(d) = large.coeffs.get(&-e) {
                    acc += c * d;
                }
            }
            acc
        }
    }

    /// Keeps only exponents divisible by `r` and divides them by `r`.
    pub fn section(&self, r: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.rem_euclid(r) == 0)
                .map(|(&e, c)| (e / r, c.clone()))
                .collect(),
        }
    }
}

/// True when every partial sum of a product of `p` and `q` fits in an `i128`.
fn fits_i128(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    let terms = p.len().min(q.len()).max(1) as u64;
    let term_bits = 64 - terms.leading_zeros() as u64;
    p.max_coeff_bits() + q.max_coeff_bits() + term_bits < 126
}

fn mul_impl(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() || q.is_zero() {
        return LaurentPoly::zero();
    }
    let lo = p.low_degree().unwrap() + q.low_degree().unwrap();
    let hi = p.degree().unwrap() + q.degree().unwrap();
    let span = (hi - lo + 1) as u128;
    let work = (p.len() as u128) * (q.len() as u128);
    if span > 4 * work + 64 {
        // very sparse result: accumulate in a map
        let mut out = LaurentPoly::zero();
        for (&e, c) in &p.coeffs {
            for (&f, d) in &q.coeffs {
                out.add_term(e + f, c * d);
            }
        }
        return out;
    }
    let span = span as usize;
    if fits_i128(p, q) {
        let qv: Vec<(i64, i128)> = q.coeffs.iter().map(|(&f, d)| (f, d.to_i128().unwrap())).collect();
        let mut acc = vec![0i128; span];
        for (&e, c) in &p.coeffs {
            let c = c.to_i128().unwrap();
            for &(f, d) in &qv {
                acc[(e + f - lo) as usize] += c * d;
            }
        }
        LaurentPoly {
            coeffs: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(i, c)| (lo + i as i64, BigInt::from(c)))
                .collect(),
        }
    } else {
        let mut acc = vec![BigInt::zero(); span];
        for (&e, c) in &p.coeffs {
            for (&f, d) in &q.coeffs {
                acc[(e + f - lo) as usize] += c * d;
            }
        }
        LaurentPoly {
            coeffs: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i64, c))
                .collect(),
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul_impl(self, rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
