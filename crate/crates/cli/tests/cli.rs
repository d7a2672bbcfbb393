use std::fs;
use std::process::{Command, Output};

use ramanujan_cli::{render_table, run_verify, GridSpec, TableFormat, TableKind, VerifyConfig};

fn ramanujan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramanujan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        ramanujan(&["eval", "--fn", "Q", "--x", "0.2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ramanujan(&["eval", "--fn", "f", "--x", "0.7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        ramanujan(&["verify", "--grid", "10"]).status.code(),
        Some(2)
    );
    let out = ramanujan(&[
        "table",
        "--what",
        "bounds",
        "--from",
        "0.3",
        "--to",
        "0.9",
        "--out",
        "/dev/null",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn eval_prints_full_precision() {
    let out = ramanujan(&["eval", "--fn", "R", "--x", "0.25", "--method", "center"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.starts_with("R(2.5000000000000000e-1) = 4.15888308335967"),
        "{text}"
    );
    assert!(text.contains("method center"));
}

#[test]
fn constants_table_has_b0() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("constants.csv");
    let out = ramanujan(&[
        "table",
        "--what",
        "constants",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("name,computed,reference\n"));
    assert!(
        text.contains("\nb0,3.2414324") && text.contains(",0.324143\n"),
        "{text}"
    );
}

#[test]
fn tables_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let path = dir.path().join(format!("bounds{i}.json"));
        let out = ramanujan(&[
            "table",
            "--what",
            "bounds",
            "--from",
            "0.01",
            "--to",
            "0.5",
            "--points",
            "25",
            "--format",
            "json",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        outputs.push(fs::read(path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let v: serde_json::Value = serde_json::from_slice(&outputs[0]).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 25);
    assert_eq!(v["meta"]["what"], "bounds");
}

#[test]
fn bounds_table_is_tight_at_half() {
    let grid = GridSpec {
        from: 0.5,
        to: 0.5,
        points: 1,
    };
    let (header, rows) =
        parse_csv(&render_table(TableKind::Errors, &grid, TableFormat::Csv).unwrap());
    for (name, gap) in header.iter().zip(&rows[0]).skip(1) {
        if name != "multiplicative_gap" {
            assert!(gap.abs() <= 1e-12, "{name}: {gap}");
        }
    }
}

#[test]
fn center_poly_gaps_shrink_with_order_near_half() {
    let grid = GridSpec {
        from: 0.4,
        to: 0.49,
        points: 10,
    };
    // Non-increasing in n everywhere, strictly while the gaps are resolvable.
    let (header, rows) =
        parse_csv(&render_table(TableKind::Errors, &grid, TableFormat::Csv).unwrap());
    let cols: Vec<usize> = (0..=3)
        .map(|n| {
            header
                .iter()
                .position(|h| *h == format!("center_poly_{n}_gap"))
                .unwrap()
        })
        .collect();
    for row in &rows {
        for w in cols.windows(2) {
            let (coarse, fine) = (row[w[0]], row[w[1]]);
            assert!(fine <= coarse, "x={}: {fine} > {coarse}", row[0]);
            if coarse > 1e-12 {
                assert!(fine < coarse, "x={}: {fine} !< {coarse}", row[0]);
            }
        }
    }
}

#[test]
fn verify_config_variants() {
    let small = run_verify(&VerifyConfig {
        grid_size: 100,
        ..VerifyConfig::default()
    })
    .unwrap();
    let full = run_verify(&VerifyConfig::default()).unwrap();
    let names = |r: &ramanujan_cli::VerifyReport| {
        r.checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>()
    };
    assert_eq!(names(&small), names(&full));
    assert_eq!(
        small.counts.passed + small.counts.failed + small.counts.advisory,
        small.checks.len()
    );
    for n in 2..=8 {
        assert!(full.criterion_passed(n), "criterion {n}");
    }

    let tight = run_verify(&VerifyConfig {
        tol_constants: 1e-15,
        ..VerifyConfig::default()
    })
    .unwrap();
    assert_eq!(tight.exit_code(), 1);
    assert!(tight
        .checks
        .iter()
        .filter(|c| c.criterion == 1 && c.name.starts_with("constant "))
        .all(|c| !c.pass));
}

#[test]
fn verify_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = ramanujan(&[
        "verify",
        "--grid",
        "200",
        "--report",
        path.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let failed = v["counts"]["failed"].as_u64().unwrap();
    assert_eq!(out.status.code(), Some(i32::from(failed > 0)));
    assert_eq!(v["meta"]["grid_size"], 200);
}
