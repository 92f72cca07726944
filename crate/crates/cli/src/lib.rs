//! Command-line front end: argument handling, reports and exit codes.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 capacity or budget
//! exceeded, 64 usage error.

pub mod config;
pub mod json;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use shapiro_core::oracle::{ct_moment_brute, parseval_check, DEFAULT_BUDGET};
use shapiro_core::pretenders::census;
use shapiro_core::spectra::{check_charpoly, check_eigenvector, dominant_pole, expected_residue, saffari_residue};
use shapiro_core::{build_scheme, Error, Monomial, Recurrence, DEFAULT_CAP};

pub use config::{parse_config, ConfigError, RecurrenceConfig};
pub use json::GenfunJson;
pub use report::{emit_montgomery_report, emit_montgomery_report_with, MontgomerySurvey};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "shapiro", version, about = "Exact constant-term moments of Rudin-Shapiro polynomials")]
struct Cli {
    /// Run independent cases concurrently (output order is unchanged).
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moment values E(k) from the scheme, optionally against brute force.
    Moments(MomentsArgs),
    /// Exact rational generating function of M_{m,n}(k).
    Genfun(GenfunArgs),
    /// Residue of R_n at t = 2^-n against 2^n/(n+1).
    Saffari {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Residue for the seed (aA)^m (bB)^(n-m) against 2^n/((n+1) C(n,m)); all m if omitted.
    Prop3 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Growth survey of M_{m,n} for 1 <= m < n <= max.
    Montgomery {
        #[arg(long)]
        max: u32,
        #[arg(long, default_value_t = 60)]
        kmax: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Characteristic polynomial of K_n against the product formula, n = 1..=max.
    Checkcp {
        #[arg(long)]
        max: u32,
    },
    /// Eigenvector identity for K_n, n = 1..=max.
    Checkev {
        #[arg(long)]
        max: u32,
    },
    /// False-pretender census for the important monomials of degree n.
    Pretenders {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// P(z)P(1/z) + P(-z)P(-1/z) = 2^(k+1) for k = 0..=kmax.
    Identity {
        #[arg(long)]
        kmax: u32,
    },
    /// Run moments or genfun for a recurrence from a config file or preset.
    General(GeneralArgs),
}

#[derive(Args, Debug)]
struct MomentsArgs {
    /// Use the seed (0, n, n, 0, 0).
    #[arg(long, required_unless_present = "alpha")]
    n: Option<u32>,
    #[arg(long)]
    k: u32,
    /// Also evaluate every value by brute-force expansion and compare.
    #[arg(long)]
    brute: bool,
    /// Seed exponents a0,a1,a2,a3,a4 for z^a0 P(z)^a1 P(1/z)^a2 P(-z)^a3 P(-1/z)^a4.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "n")]
    alpha: Option<Vec<i64>>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Operation budget per brute-force evaluation.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug)]
struct GenfunArgs {
    /// Power of P(1/z).
    #[arg(long)]
    n: u32,
    /// Power of P(z); defaults to n.
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct GeneralArgs {
    #[arg(long, required_unless_present = "preset", conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// Named recurrence; only `classic` exists.
    #[arg(long)]
    preset: Option<String>,
    #[command(subcommand)]
    command: GeneralCommand,
}

#[derive(Subcommand, Debug)]
enum GeneralCommand {
    Moments(MomentsArgs),
    Genfun(GenfunArgs),
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(text: String, ok: bool) -> Self {
        Self { code: if ok { EXIT_OK } else { EXIT_MISMATCH }, stdout: text, stderr: String::new() }
    }

    fn failure(code: i32, message: String) -> Self {
        Self { code, stdout: String::new(), stderr: message }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Capacity { .. } | Error::Budget { .. } => EXIT_CAPACITY,
        Error::Precondition(_) => EXIT_USAGE,
        _ => EXIT_MISMATCH,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::failure(error_code(&e), format!("{e}\n"))
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_command<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::report(e.to_string(), true),
                _ => Outcome::failure(EXIT_USAGE, e.render().to_string()),
            };
        }
    };
    let parallel = cli.parallel;
    let result = match cli.command {
        Command::Moments(a) => moments(&a, &Recurrence::classic()),
        Command::Genfun(a) => genfun(&a, &Recurrence::classic()),
        Command::Saffari { n, cap } => saffari(n, cap),
        Command::Prop3 { n, m, cap } => prop3(n, m, cap, parallel),
        Command::Montgomery { max, kmax, cap } => montgomery(max, kmax, cap, parallel),
        Command::Checkcp { max } => per_n("checkcp", max, parallel, check_charpoly),
        Command::Checkev { max } => per_n("checkev", max, parallel, check_eigenvector),
        Command::Pretenders { n, cap } => pretenders(n, cap),
        Command::Identity { kmax } => identity(kmax, parallel),
        Command::General(a) => return general(a),
    };
    result.unwrap_or_else(Outcome::from)
}

fn general(a: GeneralArgs) -> Outcome {
    let config = match (&a.config, &a.preset) {
        (Some(path), _) => match std::fs::read_to_string(path) {
            Ok(text) => parse_config(&text),
            Err(e) => return Outcome::failure(EXIT_USAGE, format!("cannot read {}: {e}\n", path.display())),
        },
        (None, Some(name)) => RecurrenceConfig::preset(name),
        (None, None) => unreachable!("clap requires --config or --preset"),
    };
    let rec = match config.and_then(|c| c.recurrence()) {
        Ok(rec) => rec,
        Err(e) => return Outcome::failure(EXIT_USAGE, format!("{e}\n")),
    };
    let result = match a.command {
        GeneralCommand::Moments(m) => moments(&m, &rec),
        GeneralCommand::Genfun(g) => genfun(&g, &rec),
    };
    result.unwrap_or_else(Outcome::from)
}

type CmdResult = Result<Outcome, Error>;

fn seed_of(a: &MomentsArgs) -> Result<Monomial, Error> {
    match (&a.alpha, a.n) {
        (Some(v), _) => {
            let t: [i64; 5] = v
                .as_slice()
                .try_into()
                .map_err(|_| Error::Precondition(format!("--alpha needs 5 entries, got {}", v.len())))?;
            Monomial::from_tuple(t)
                .ok_or_else(|| Error::Precondition("--alpha powers a1..a4 must be nonnegative".into()))
        }
        (None, Some(n)) => Ok(Monomial::mixed_moment(n, n)),
        (None, None) => unreachable!("clap requires --n or --alpha"),
    }
}

fn moments(a: &MomentsArgs, rec: &Recurrence) -> CmdResult {
    let seed = seed_of(a)?;
    let sys = build_scheme(seed, rec, a.cap)?;
    let seq = sys.iterate_sequence(a.k as usize);
    let mut out = String::new();
    let _ = writeln!(out, "seed: {seed} {:?}", seed.to_tuple());
    let _ = writeln!(out, "states: {}", sys.len());
    let mut ok = true;
    for (k, v) in seq.iter().enumerate() {
        if a.brute {
            let b = ct_moment_brute(seed, k as u32, rec, a.budget)?;
            let same = &b == v;
            ok &= same;
            let _ = writeln!(out, "{k} {v} brute={b} {}", if same { "agree" } else { "MISMATCH" });
        } else {
            let _ = writeln!(out, "{k} {v}");
        }
    }
    if a.brute {
        let _ =
            writeln!(out, "{}", if ok { "scheme and brute force agree" } else { "scheme and brute force DISAGREE" });
    }
    Ok(Outcome::report(out, ok))
}

fn genfun(a: &GenfunArgs, rec: &Recurrence) -> CmdResult {
    let m = a.m.unwrap_or(a.n);
    if m == 0 && a.n == 0 {
        return Err(Error::Precondition("m and n must not both be zero".into()));
    }
    let sys = build_scheme(Monomial::mixed_moment(m, a.n), rec, a.cap)?;
    let rf = sys.genfun()?;
    if a.json {
        let doc = GenfunJson::new(&rf, &sys);
        let text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        return Ok(Outcome::report(text + "\n", true));
    }
    let list = |p: &shapiro_core::IntPoly| {
        let v: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
        format!("[{}]", v.join(", "))
    };
    let mut out = String::new();
    let _ = writeln!(out, "seed: {} {:?}", sys.seed(), sys.seed().to_tuple());
    let _ = writeln!(out, "states: {}", sys.len());
    let _ = writeln!(out, "num: {}", list(rf.num()));
    let _ = writeln!(out, "den: {}", list(rf.den()));
    let _ = writeln!(out, "R(t) = {rf}");
    let _ = writeln!(out, "factored: {}", rf.factored_display());
    Ok(Outcome::report(out, true))
}

fn saffari(n: u32, cap: usize) -> CmdResult {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let rf = build_scheme(Monomial::mixed_moment(n, n), &Recurrence::classic(), cap)?.genfun()?;
    let rep = saffari_residue(n, &rf)?;
    let mut out = String::new();
    let _ = writeln!(out, "R_{n}(t) = {}", rep.genfun.factored_display());
    let _ = writeln!(out, "residue at t = 1/2^{n}: {}", rep.residue);
    let _ = writeln!(out, "expected 2^{n}/{}: {}", n + 1, rep.expected);
    let _ = writeln!(out, "match: {}", rep.matches);
    let _ = writeln!(out, "dominant root: {}", rep.dominant_root_ok);
    Ok(Outcome::report(out, rep.matches && rep.dominant_root_ok))
}

fn prop3(n: u32, m: Option<u32>, cap: usize, parallel: bool) -> CmdResult {
    if n == 0 || m.is_some_and(|m| m > n) {
        return Err(Error::Precondition(format!("need n >= 1 and 0 <= m <= n, got n={n}, m={m:?}")));
    }
    let ms: Vec<u32> = m.map_or_else(|| (0..=n).collect(), |m| vec![m]);
    let run = |&m: &u32| -> Result<(u32, shapiro_core::Rational), Error> {
        let rf = build_scheme(Monomial::important(m, n), &Recurrence::classic(), cap)?.genfun()?;
        Ok((m, dominant_pole(n, &rf)?.residue))
    };
    let results: Vec<_> = if parallel { ms.par_iter().map(run).collect() } else { ms.iter().map(run).collect() };
    let mut out = String::new();
    let mut ok = true;
    for r in results {
        let (m, residue) = r?;
        let expected = expected_residue(n, m);
        let same = residue == expected;
        ok &= same;
        let _ =
            writeln!(out, "n={n} m={m} residue={residue} expected={expected} {}", if same { "ok" } else { "MISMATCH" });
    }
    Ok(Outcome::report(out, ok))
}

fn montgomery(max: u32, kmax: usize, cap: usize, parallel: bool) -> CmdResult {
    let survey = emit_montgomery_report_with(max, kmax, cap, parallel)?;
    let code = if survey.capacity_failures() > 0 {
        EXIT_CAPACITY
    } else if survey.all_passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    Ok(Outcome { code, stdout: survey.text, stderr: String::new() })
}

fn per_n(name: &str, max: u32, parallel: bool, check: fn(u32) -> bool) -> CmdResult {
    if max == 0 {
        return Err(Error::Precondition(format!("{name} needs --max >= 1")));
    }
    let ns: Vec<u32> = (1..=max).collect();
    let results: Vec<bool> =
        if parallel { ns.par_iter().map(|&n| check(n)).collect() } else { ns.iter().map(|&n| check(n)).collect() };
    let mut out = String::new();
    for (n, r) in ns.iter().zip(&results) {
        let _ = writeln!(out, "n={n} {r}");
    }
    let all = results.iter().all(|&r| r);
    let _ = writeln!(out, "{}", if all { "all true" } else { "some false" });
    Ok(Outcome::report(out, all))
}

fn pretenders(n: u32, cap: usize) -> CmdResult {
    if n < 2 {
        return Err(Error::Precondition("the census needs n >= 2".into()));
    }
    let c = census(n, cap)?;
    let mut out = String::new();
    let _ = writeln!(out, "n: {n}");
    let _ = writeln!(out, "universe (states reachable from the important seeds): {}", c.universe_size);
    let _ = writeln!(out, "important states: {}", c.important_count);
    let _ = writeln!(out, "pretender states: {}", c.pretender_states.len());
    for s in &c.pretender_states {
        let _ = writeln!(out, "  {s} {:?}", s.to_tuple());
    }
    let _ = writeln!(out, "false pretenders (up to z -> 1/z): {}", c.false_pretenders.len());
    for p in &c.false_pretenders {
        let _ = writeln!(out, "  {p} {:?}", p.to_tuple());
    }
    let _ = writeln!(out, "expected: {}", c.expected_count);
    let _ = writeln!(out, "match: {}", c.matches());
    Ok(Outcome::report(out, c.matches()))
}

fn identity(kmax: u32, parallel: bool) -> CmdResult {
    let ks: Vec<u32> = (0..=kmax).collect();
    let results: Vec<bool> = if parallel {
        ks.par_iter().map(|&k| parseval_check(k)).collect()
    } else {
        ks.iter().map(|&k| parseval_check(k)).collect()
    };
    let mut out = String::new();
    for (k, r) in ks.iter().zip(&results) {
        let _ = writeln!(out, "k={k} {r}");
    }
    let all = results.iter().all(|&r| r);
    let _ = writeln!(out, "{}", if all { "all true" } else { "some false" });
    Ok(Outcome::report(out, all))
}
