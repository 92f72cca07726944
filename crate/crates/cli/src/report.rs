//! The mixed-moment growth survey document.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use shapiro_core::spectra::{montgomery_check, MontgomeryReport, MIN_CONFIDENT_KMAX};
use shapiro_core::{Error, Result, DEFAULT_CAP};

/// Outcome for one pair `(m, n)`, `m < n`.
#[derive(Debug, Clone)]
pub struct PairOutcome {
    pub m: u32,
    pub n: u32,
    pub result: Result<MontgomeryReport>,
}

impl PairOutcome {
    pub fn passed(&self) -> bool {
        self.result.as_ref().is_ok_and(MontgomeryReport::passed)
    }
}

#[derive(Debug, Clone)]
pub struct MontgomerySurvey {
    pub max_n: u32,
    pub k_max: usize,
    pub pairs: Vec<PairOutcome>,
    pub text: String,
}

impl MontgomerySurvey {
    pub fn passed(&self) -> usize {
        self.pairs.iter().filter(|p| p.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.pairs.len()
    }

    pub fn capacity_failures(&self) -> usize {
        self.pairs.iter().filter(|p| matches!(p.result, Err(Error::Capacity { .. }))).count()
    }

    pub fn low_confidence(&self) -> bool {
        self.k_max < MIN_CONFIDENT_KMAX
    }
}

/// Survey of all `1 <= m < n <= max_n` with the default cap, sequentially.
pub fn emit_montgomery_report(max_n: u32, k_max: usize) -> Result<MontgomerySurvey> {
    emit_montgomery_report_with(max_n, k_max, DEFAULT_CAP, false)
}

pub fn emit_montgomery_report_with(max_n: u32, k_max: usize, cap: usize, parallel: bool) -> Result<MontgomerySurvey> {
    if max_n < 2 {
        return Err(Error::Precondition(format!("the survey needs max n >= 2, got {max_n}")));
    }
    let pairs: Vec<(u32, u32)> = (2..=max_n).flat_map(|n| (1..n).map(move |m| (m, n))).collect();
    let run = |&(m, n): &(u32, u32)| PairOutcome { m, n, result: montgomery_check(m, n, k_max, cap) };
    let pairs: Vec<PairOutcome> =
        if parallel { pairs.par_iter().map(run).collect() } else { pairs.iter().map(run).collect() };
    let mut survey = MontgomerySurvey { max_n, k_max, pairs, text: String::new() };
    survey.text = render(&survey);
    Ok(survey)
}

fn approx(q: &BigRational) -> String {
    match q.to_f64() {
        Some(x) if x.is_finite() => format!("{x:.6e}"),
        _ => "overflow".to_string(),
    }
}

fn verdict(rep: &MontgomeryReport) -> &'static str {
    match (rep.passed(), rep.low_confidence) {
        (true, false) => "PASS",
        (false, false) => "FAIL",
        (true, true) => "PASS (LOW-CONFIDENCE)",
        (false, true) => "FAIL (LOW-CONFIDENCE)",
    }
}

fn render(s: &MontgomerySurvey) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "# Mixed moments M_{{m,n}}(k) = CT[P_k(z)^m P_k(1/z)^n]: growth survey [HEURISTIC]");
    let _ = writeln!(w);
    let _ = writeln!(
        w,
        "Claim checked: M_{{m,n}}(k) = o(2^((m+n)k/2)) for m != n. Finitely many terms cannot decide this; \
         each verdict combines an exact window rule on the ratios with a floating-point root-modulus check."
    );
    let _ = writeln!(w);
    let _ = writeln!(w, "pairs: {}, passed: {}, k_max: {}", s.pairs.len(), s.passed(), s.k_max);
    if s.low_confidence() {
        let _ = writeln!(w, "LOW-CONFIDENCE: the window rule needs k_max >= {MIN_CONFIDENT_KMAX}");
    }
    for p in &s.pairs {
        let _ = writeln!(w);
        let _ = writeln!(w, "## (m, n) = ({}, {})", p.m, p.n);
        let rep = match &p.result {
            Ok(rep) => rep,
            Err(e) => {
                let _ = writeln!(w, "error: {e}");
                continue;
            }
        };
        let _ = writeln!(w, "generating function: {}", rep.genfun);
        let _ = writeln!(w, "factored: {}", rep.genfun.factored_display());
        let label = if rep.squared {
            format!("rho_k^2 = M(k)^2 / 2^({}k)", p.m + p.n)
        } else {
            format!("rho_k = |M(k)| / 2^({}k)", (p.m + p.n) / 2)
        };
        let _ = writeln!(w, "ratio table ({label}):");
        let _ = writeln!(w, "  k | M(k) | ratio (exact) | ratio (approx)");
        for (k, (v, q)) in rep.sequence.iter().zip(&rep.ratios).enumerate() {
            let _ = writeln!(w, "  {k} | {v} | {q} | {}", approx(q));
        }
        let (late, early) = rep.window_maxima();
        let _ = writeln!(
            w,
            "window rule: max over [{}, {}] = {} {} max over [0, 20] = {} -> {}",
            rep.k_max.saturating_sub(10),
            rep.k_max,
            approx(&late),
            if rep.window_ok { "<" } else { ">=" },
            approx(&early),
            if rep.window_ok { "ok" } else { "violated" }
        );
        let _ = writeln!(
            w,
            "root check: every reciprocal denominator root below 2^({}/2) in modulus -> {}",
            p.m + p.n,
            if rep.root_ok { "ok" } else { "violated" }
        );
        let _ = writeln!(w, "verdict: {} [HEURISTIC]", verdict(rep));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_enumeration() {
        let s = emit_montgomery_report(2, 40).unwrap();
        assert_eq!(s.pairs.len(), 1);
        assert_eq!((s.pairs[0].m, s.pairs[0].n), (1, 2));
        let s = emit_montgomery_report(3, 40).unwrap();
        assert_eq!(s.pairs.len(), 3);
        assert!(s.all_passed());
        assert!(s.text.contains("HEURISTIC"));
        assert!(emit_montgomery_report(1, 40).is_err());
    }

    #[test]
    fn short_runs_are_flagged() {
        let s = emit_montgomery_report(2, 10).unwrap();
        assert!(s.low_confidence());
        assert!(s.text.contains("LOW-CONFIDENCE"));
    }

    #[test]
    fn capacity_failures_are_inline() {
        let s = emit_montgomery_report_with(3, 40, 1, false).unwrap();
        assert_eq!(s.capacity_failures(), 3);
        assert!(s.text.contains("FAIL: scheme exceeded"));
    }

    #[test]
    fn parallel_matches_sequential() {
        let a = emit_montgomery_report_with(3, 40, DEFAULT_CAP, false).unwrap();
        let b = emit_montgomery_report_with(3, 40, DEFAULT_CAP, true).unwrap();
        assert_eq!(a.text, b.text);
    }
}
