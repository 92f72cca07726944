use std::io::Write;
use std::process::Command;

use shapiro_cli::{run_command, GenfunJson};

fn run(args: &[&str]) -> shapiro_cli::Outcome {
    run_command(std::iter::once("shapiro").chain(args.iter().copied()))
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_shapiro");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["genfun", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("den: [1, -2, -8]"));
    let cap = status(&["genfun", "--n", "6", "--cap", "1"]);
    assert_eq!(cap.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&cap.stderr).contains("FAIL"));
    assert_eq!(status(&["genfun", "--frobnicate"]).status.code(), Some(64));
    assert_eq!(status(&["nosuch"]).status.code(), Some(64));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

#[test]
fn genfun_text_and_factored_display() {
    let out = run(&["genfun", "--n", "2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("num: [1, 4]"));
    assert!(out.stdout.contains("(1 + 2*t)") && out.stdout.contains("(1 - 4*t)"));
    let mixed = run(&["genfun", "--n", "2", "--m", "1"]);
    assert_eq!(mixed.code, 0);
    assert!(mixed.stdout.contains("[0, 1, 2, 0, 0]"));
    assert_eq!(run(&["genfun", "--n", "0", "--m", "0"]).code, 64);
}

#[test]
fn json_round_trip_is_stable() {
    let out = run(&["genfun", "--n", "4", "--json"]);
    assert_eq!(out.code, 0);
    let doc: GenfunJson = serde_json::from_str(&out.stdout).unwrap();
    let rf = doc.rational_function().unwrap();
    assert_eq!(rf.num().coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(), doc.num);
    assert_eq!(rf.den().coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(), doc.den);
    let again = serde_json::to_string_pretty(&doc).unwrap() + "\n";
    assert_eq!(again, out.stdout);
    // R_4 has coefficients beyond 64 bits
    assert!(doc.num.iter().any(|c| c.trim_start_matches('-').len() > 19) || doc.den.len() == 13);
}

#[test]
fn moments_against_brute_force() {
    let out = run(&["moments", "--n", "2", "--k", "4", "--brute"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("4 336 brute=336 agree"));
    let signed = run(&["moments", "--alpha", "-1,2,1,0,1", "--k", "5", "--brute"]);
    assert_eq!(signed.code, 0, "{}{}", signed.stdout, signed.stderr);
    assert_eq!(run(&["moments", "--alpha", "0,1,1", "--k", "2"]).code, 64);
    assert_eq!(run(&["moments", "--alpha", "0,-1,1,0,0", "--k", "2"]).code, 64);
    let budget = run(&["moments", "--n", "3", "--k", "9", "--brute", "--budget", "100"]);
    assert_eq!(budget.code, 2);
}

#[test]
fn verification_commands() {
    let cp = run(&["checkcp", "--max", "8"]);
    assert_eq!(cp.code, 0);
    assert!(cp.stdout.ends_with("all true\n"));
    assert_eq!(run(&["checkev", "--max", "50", "--parallel"]).stdout, run(&["checkev", "--max", "50"]).stdout);
    let s = run(&["saffari", "--n", "3"]);
    assert_eq!(s.code, 0);
    assert!(s.stdout.contains("residue at t = 1/2^3: 2"));
    let p = run(&["prop3", "--n", "2"]);
    assert_eq!(p.code, 0);
    assert!(p.stdout.contains("m=1 residue=2/3"));
    assert_eq!(run(&["prop3", "--n", "2", "--m", "3"]).code, 64);
    let id = run(&["identity", "--kmax", "6"]);
    assert_eq!(id.code, 0);
    let pre = run(&["pretenders", "--n", "4"]);
    assert_eq!(pre.code, 0, "{}", pre.stdout);
    assert!(pre.stdout.contains("false pretenders (up to z -> 1/z): 3"));
}

#[test]
fn montgomery_report_codes() {
    let out = run(&["montgomery", "--max", "3", "--kmax", "40"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("pairs: 3, passed: 3"));
    let low = run(&["montgomery", "--max", "2", "--kmax", "10"]);
    assert!(low.stdout.contains("LOW-CONFIDENCE"));
    let cap = run(&["montgomery", "--max", "3", "--cap", "1"]);
    assert_eq!(cap.code, 2);
    assert!(cap.stdout.contains("FAIL: scheme exceeded"));
}

#[test]
fn general_configs() {
    let preset = run(&["general", "--preset", "classic", "genfun", "--n", "3"]);
    assert_eq!(preset.code, 0);
    assert!(preset.stdout.contains("den: [1, -4, -32]"));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "r = 3\n[c1]\n0 = 1\n[c2]\n1 = 1").unwrap();
    let path = file.path().to_str().unwrap();
    let out = run(&["general", "--config", path, "moments", "--alpha", "0,1,1,0,0", "--k", "6", "--brute"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("scheme and brute force agree"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "r = 2\n[c1]\n2 = 1").unwrap();
    let err = run(&["general", "--config", bad.path().to_str().unwrap(), "genfun", "--n", "1"]);
    assert_eq!(err.code, 64);
    assert!(err.stderr.contains("c1") && err.stderr.contains("exponent 2"));

    assert_eq!(run(&["general", "genfun", "--n", "1"]).code, 64);
    assert_eq!(run(&["general", "--preset", "nope", "genfun", "--n", "1"]).code, 64);
    assert_eq!(run(&["general", "--config", "/nonexistent/x.toml", "genfun", "--n", "1"]).code, 64);
}
