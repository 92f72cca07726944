//! Word-size prime field helpers shared by the multimodular routines.

use num_bigint::BigInt;
use num_integer::Integer;

/// Primes below `2^31`, largest first, so products fit in `u64`.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31)).rev().step_by(2).filter(|&q| {
        let mut d = 3;
        while d * d <= q {
            if q % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub(crate) fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

pub(crate) fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).try_into().expect("residue below p")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(f, g)` over `GF(p)`; `None` if either is zero mod `p`.
pub(crate) fn gcd_degree(f: &[BigInt], g: &[BigInt], p: u64) -> Option<usize> {
    let mut a: Vec<u64> = f.iter().map(|x| reduce(x, p)).collect();
    let mut b: Vec<u64> = g.iter().map(|x| reduce(x, p)).collect();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() || b.is_empty() {
        return None;
    }
    while !b.is_empty() {
        // a <- a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let q = a.last().unwrap() * inv % p;
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - q * bi % p) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len() - 1)
}
