use num_bigint::BigInt;
use num_traits::One;

use shapiro_core::oracle::{ct_moment_correlation, DEFAULT_BUDGET};
use shapiro_core::scheme::{build_closure, Rewriter};
use shapiro_core::spectra::k_entry;
use shapiro_core::{build_scheme, LaurentPoly, Monomial, Recurrence, Term};

fn oracle(m: Monomial, k: u32, rec: &Recurrence) -> BigInt {
    ct_moment_correlation(m, k, rec, DEFAULT_BUDGET).unwrap()
}

#[test]
fn even_moments_match_brute_force() {
    let rec = Recurrence::classic();
    for n in 1..=4 {
        let seq = build_scheme(Monomial::mixed_moment(n, n), &rec, 1000).unwrap().iterate_sequence(8);
        for (k, v) in seq.iter().enumerate() {
            assert_eq!(v, &oracle(Monomial::mixed_moment(n, n), k as u32, &rec), "n={n} k={k}");
        }
    }
}

#[test]
fn every_state_matches_brute_force() {
    let rec = Recurrence::classic();
    let sys = build_scheme(Monomial::new(1, 2, 1, 0, 1), &rec, 1000).unwrap();
    let all = sys.iterate_all(5);
    for (k, values) in all.iter().enumerate() {
        for (s, v) in sys.states().iter().zip(values) {
            assert_eq!(v, &oracle(*s, k as u32, &rec), "{s} at k={k}");
        }
    }
    assert_eq!(sys.seed_coeff(), &BigInt::one());
}

#[test]
fn conservation_law_through_the_scheme() {
    let rec = Recurrence::classic();
    for n in 1..=4u32 {
        let seeds: Vec<Monomial> = (0..=n).map(|m| Monomial::important(m, n)).collect();
        let sys = build_closure(&seeds, &rec, 1000).unwrap();
        let values = sys.iterate_all(8);
        for (k, row) in values.iter().enumerate() {
            let mut total = BigInt::from(0);
            let mut binom = BigInt::one();
            for m in 0..=n {
                let t = Term::new(1, Monomial::important(m, n)).canonicalize();
                let idx = sys.index_of(t.mono).unwrap();
                total += &binom * &t.coeff * &row[idx];
                binom = binom * (n - m) / (m + 1);
            }
            assert_eq!(total, BigInt::one() << ((k as u32 + 1) * n), "n={n} k={k}");
        }
    }
}

#[test]
fn important_coefficients_are_k_entries() {
    let mut rw = Rewriter::new(&Recurrence::classic());
    for n in 1..=10u32 {
        for m in 0..=n {
            let raw = rw.expand(Monomial::important(m, n));
            let canon = rw.rewrite(Monomial::important(m, n));
            for r in 0..=n {
                let got = raw.get(&Monomial::important(r, n)).cloned().unwrap_or_default();
                assert_eq!(got, k_entry(n, m, r), "raw n={n} m={m} r={r}");
                // canonicalization merges (aA)^r (bB)^(n-r) with its z -> -z image
                let rep = Term::new(1, Monomial::important(r, n)).canonicalize().mono;
                let merged = if 2 * r == n { k_entry(n, m, r) } else { k_entry(n, m, r) + k_entry(n, m, n - r) };
                assert_eq!(canon.get(&rep).cloned().unwrap_or_default(), merged, "canonical n={n} m={m} r={r}");
            }
        }
    }
}

#[test]
fn ternary_recurrence_matches_brute_force() {
    let rec =
        Recurrence::new(3, [LaurentPoly::one(), LaurentPoly::monomial(1, 1), LaurentPoly::zero(), LaurentPoly::zero()])
            .unwrap();
    for seed in [Monomial::new(0, 1, 1, 0, 0), Monomial::new(0, 2, 1, 0, 0), Monomial::new(-1, 1, 0, 1, 1)] {
        let seq = build_scheme(seed, &rec, 1000).unwrap().iterate_sequence(5);
        for (k, v) in seq.iter().enumerate() {
            assert_eq!(v, &oracle(seed, k as u32, &rec), "{seed} at k={k}");
        }
    }
}
