//! One test per acceptance criterion. Each writes a single `PASS`/`FAIL`
//! line straight to stdout so the verdicts show even under output capture;
//! failing checks are listed before the assertion fires.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use ramanujan_cli::{run_criterion, Check, VerifyConfig};

fn report(criterion: u8, title: &str, pass: bool, failures: &[String]) {
    let mut out = std::io::stdout().lock();
    for f in failures {
        writeln!(out, "    {f}").unwrap();
    }
    let verdict = if pass { "PASS" } else { "FAIL" };
    writeln!(out, "{verdict} criterion {criterion}: {title}").unwrap();
}

fn describe(c: &Check) -> String {
    let mut s = format!(
        "[{}] {}: expected {:e} actual {:e} tol {:e}",
        c.criterion, c.name, c.expected, c.actual, c.tolerance
    );
    if let Some(d) = &c.detail {
        s.push_str(&format!(" ({d})"));
    }
    s
}

fn criterion(n: u8, title: &str) {
    let config = VerifyConfig::default();
    let checks = run_criterion(n, &config);
    assert!(!checks.is_empty());
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass && c.required)
        .map(describe)
        .collect();
    let notes: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass && !c.required)
        .map(|c| format!("note: {}", describe(c)))
        .collect();
    let pass = failures.is_empty();
    report(n, title, pass, &[failures.clone(), notes].concat());
    assert!(pass, "criterion {n} failed:\n{}", failures.join("\n"));
}

#[test]
fn criterion_1_constants_ledger() {
    criterion(1, "constants ledger");
}

#[test]
fn criterion_2_identity_residuals() {
    criterion(2, "identity residuals and recurrences");
}

#[test]
fn criterion_3_series_cross_validation() {
    criterion(3, "series cross-validation");
}

#[test]
fn criterion_4_inequality_soundness() {
    criterion(4, "inequality soundness");
}

#[test]
fn criterion_5_roots_and_delta() {
    criterion(5, "roots and delta");
}

#[test]
fn criterion_6_shape_properties() {
    criterion(6, "shape properties");
}

#[test]
fn criterion_7_complete_monotonicity() {
    criterion(7, "complete-monotonicity probes");
}

#[test]
fn criterion_8_dirichlet_layer() {
    criterion(8, "Dirichlet-layer checks");
}

#[test]
fn criterion_9_end_to_end_verify() {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_ramanujan"))
        .arg("verify")
        .output()
        .expect("run verify");
    let elapsed = start.elapsed();
    let code = output.status.code();
    let fast = elapsed < Duration::from_secs(60);
    let pass = fast && code == Some(0);
    let stdout = String::from_utf8_lossy(&output.stdout);
    let failures: Vec<String> = stdout
        .lines()
        .filter(|l| l.starts_with("FAIL"))
        .map(str::to_string)
        .chain(std::iter::once(format!(
            "exit status {code:?} after {:.2} s",
            elapsed.as_secs_f64()
        )))
        .collect();
    report(9, "end-to-end verify", pass, &failures);
    assert!(fast, "verify took {elapsed:?}");
    assert_eq!(code, Some(0), "verify exit status");
}
