use std::cmp::{Ordering, Reverse};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

/// Index of each Laurent-polynomial factor inside [`Monomial::pow`].
pub mod sym {
    /// `P_k(z)`
    pub const A_LOW: usize = 0;
    /// `P_k(1/z)`
    pub const A_UP: usize = 1;
    /// `P_k(-z)`
    pub const B_LOW: usize = 2;
    /// `P_k(-1/z)`
    pub const B_UP: usize = 3;
}

/// The monomial `z^z * a^pow[0] * A^pow[1] * b^pow[2] * B^pow[3]`, where
/// `a = P_k(z)`, `A = P_k(1/z)`, `b = P_k(-z)`, `B = P_k(-1/z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub z: i64,
    pub pow: [u32; 4],
}

impl Monomial {
    pub const fn new(z: i64, a: u32, big_a: u32, b: u32, big_b: u32) -> Self {
        Self { z, pow: [a, big_a, b, big_b] }
    }

    /// `(aA)^m (bB)^(n-m)`.
    pub const fn important(m: u32, n: u32) -> Self {
        Self::new(0, m, m, n - m, n - m)
    }

    /// `P_k(z)^m P_k(1/z)^n`.
    pub const fn mixed_moment(m: u32, n: u32) -> Self {
        Self::new(0, m, n, 0, 0)
    }

    pub fn from_tuple(t: [i64; 5]) -> Option<Self> {
        let p = |x: i64| u32::try_from(x).ok();
        Some(Self::new(t[0], p(t[1])?, p(t[2])?, p(t[3])?, p(t[4])?))
    }

    pub fn to_tuple(self) -> [i64; 5] {
        [self.z, self.pow[0] as i64, self.pow[1] as i64, self.pow[2] as i64, self.pow[3] as i64]
    }

    /// Total degree in the four polynomial factors.
    pub fn degree(self) -> u32 {
        self.pow.iter().sum()
    }

    /// `z -> -z`: swaps a with b and A with B, sign `(-1)^z`.
    pub fn negate_z(self) -> (Self, bool) {
        let [a, big_a, b, big_b] = self.pow;
        (Self::new(self.z, b, big_b, a, big_a), self.z.rem_euclid(2) == 1)
    }

    /// `z -> 1/z`: swaps a with A and b with B, negates the z exponent.
    pub fn invert_z(self) -> Self {
        let [a, big_a, b, big_b] = self.pow;
        Self::new(-self.z, big_a, a, big_b, b)
    }

    /// The four images under the dihedral group, each with a flag telling
    /// whether the constant term changes sign.
    pub fn orbit(self) -> [(Self, bool); 4] {
        let (s, s_neg) = self.negate_z();
        let t = self.invert_z();
        let (st, st_neg) = t.negate_z();
        [(self, false), (s, s_neg), (t, false), (st, st_neg)]
    }

    /// Total order used to pick orbit representatives: smaller `|z|` first,
    /// nonnegative `z` before negative, then larger powers of a, A, b, B.
    fn key(self) -> (u64, bool, Reverse<u32>, Reverse<u32>, Reverse<u32>, Reverse<u32>) {
        let [a, big_a, b, big_b] = self.pow;
        (self.z.unsigned_abs(), self.z < 0, Reverse(a), Reverse(big_a), Reverse(b), Reverse(big_b))
    }

    /// Orbit representative and whether the constant term flips sign on the
    /// way there. `None` when the orbit contains the monomial's own negative,
    /// which forces its constant term to vanish for every `k`.
    pub fn canonical(self) -> Option<(Self, bool)> {
        let orbit = self.orbit();
        let (best, flip) = *orbit.iter().min_by_key(|(m, _)| m.key()).unwrap();
        if orbit.iter().any(|&(m, f)| m == best && f != flip) {
            return None;
        }
        Some((best, flip))
    }

    pub fn is_canonical(self) -> bool {
        self.canonical() == Some((self, false))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders monomials by the canonical-representative key.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a", "A", "b", "B"];
        let mut parts = Vec::new();
        match self.z {
            0 => {}
            1 => parts.push("z".to_string()),
            e => parts.push(format!("z^{e}")),
        }
        for (name, &p) in names.iter().zip(&self.pow) {
            match p {
                0 => {}
                1 => parts.push(name.to_string()),
                p => parts.push(format!("{name}^{p}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A signed multiple of a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub mono: Monomial,
}

impl Term {
    pub fn new(coeff: impl Into<BigInt>, mono: Monomial) -> Self {
        Self { coeff: coeff.into(), mono }
    }

    /// Moves the term to its orbit representative, folding the sign into the
    /// coefficient. A self-cancelling orbit yields coefficient zero.
    pub fn canonicalize(&self) -> Term {
        match self.mono.canonical() {
            Some((mono, flip)) => Term { coeff: if flip { -&self.coeff } else { self.coeff.clone() }, mono },
            None => Term { coeff: BigInt::zero(), mono: self.mono.orbit().iter().map(|o| o.0).min().unwrap() },
        }
    }
}
