use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::LaurentPoly;
use crate::monomial::{Monomial, Term};
use crate::recurrence::Recurrence;

/// Polynomial in the four level-(k-1) factors with Laurent coefficients in z.
type Expansion = BTreeMap<[u32; 4], LaurentPoly>;

/// Linear combination of monomials, kept sorted by the canonical order.
pub type LinComb = BTreeMap<Monomial, BigInt>;

fn multiply(x: &Expansion, y: &Expansion) -> Expansion {
    let mut out = Expansion::new();
    for (kx, px) in x {
        for (ky, py) in y {
            let key = [kx[0] + ky[0], kx[1] + ky[1], kx[2] + ky[2], kx[3] + ky[3]];
            let prod = px * py;
            let slot = out.entry(key).or_default();
            *slot = &*slot + &prod;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

fn unit() -> Expansion {
    Expansion::from([([0; 4], LaurentPoly::one())])
}

/// Performs the going-down step for one recurrence, caching the powers of
/// each substituted factor.
pub struct Rewriter {
    radix: i64,
    factors: [Expansion; 4],
    powers: HashMap<(usize, u32), Expansion>,
}

impl Rewriter {
    pub fn new(rec: &Recurrence) -> Self {
        let args = [(false, false), (false, true), (true, false), (true, true)];
        let factors = args.map(|(neg, inv)| {
            let sub = rec.substitution(neg, inv);
            let mut e = Expansion::new();
            for (i, p) in sub.into_iter().enumerate() {
                if !p.is_zero() {
                    let mut key = [0u32; 4];
                    key[i] = 1;
                    e.insert(key, p);
                }
            }
            e
        });
        Self { radix: rec.radix() as i64, factors, powers: HashMap::new() }
    }

    fn power(&mut self, factor: usize, exp: u32) -> Expansion {
        if exp == 0 {
            return unit();
        }
        if let Some(e) = self.powers.get(&(factor, exp)) {
            return e.clone();
        }
        let prev = self.power(factor, exp - 1);
        let e = multiply(&prev, &self.factors[factor]);
        self.powers.insert((factor, exp), e.clone());
        e
    }

    /// Substitutes, expands, keeps z-exponents divisible by the radix and
    /// divides them by it. No canonicalization: the result is the exact
    /// identity `E[mono](k) = sum c_i E[m_i](k-1)` over raw monomials.
    pub fn expand(&mut self, mono: Monomial) -> LinComb {
        let mut acc = unit();
        for (i, &p) in mono.pow.iter().enumerate() {
            if p > 0 {
                let pw = self.power(i, p);
                acc = multiply(&acc, &pw);
            }
        }
        let mut out = LinComb::new();
        for (key, poly) in acc {
            for (e, c) in poly.terms() {
                let e = e + mono.z;
                if e.rem_euclid(self.radix) != 0 {
                    continue;
                }
                let m = Monomial { z: e / self.radix, pow: key };
                add_into(&mut out, m, c.clone());
            }
        }
        out
    }

    /// [`expand`](Self::expand) followed by canonicalization of every child.
    pub fn rewrite(&mut self, mono: Monomial) -> LinComb {
        canonicalize_comb(self.expand(mono))
    }
}

fn add_into(comb: &mut LinComb, m: Monomial, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = comb.entry(m).or_default();
    *slot += c;
    if slot.is_zero() {
        comb.remove(&m);
    }
}

/// Maps every monomial to its orbit representative and merges like terms.
pub fn canonicalize_comb(comb: LinComb) -> LinComb {
    let mut out = LinComb::new();
    for (m, c) in comb {
        let t = Term::new(c, m).canonicalize();
        add_into(&mut out, t.mono, t.coeff);
    }
    out
}

/// One going-down step: `E[mono](k)` as a combination of canonical
/// `E[.](k-1)`, sorted by the canonical order, zero coefficients dropped.
pub fn rewrite_step(mono: Monomial, rec: &Recurrence) -> Vec<Term> {
    Rewriter::new(rec).rewrite(mono).into_iter().map(|(m, c)| Term::new(c, m)).collect()
}
