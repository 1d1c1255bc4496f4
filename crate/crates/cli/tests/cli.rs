//! End-to-end tests of the binary: flags, wire formats, exit codes, and
//! output determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsirelson"))
        .args(args)
        .env_remove("TSIRELSON_CAP_DP_SCHREIER")
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout must be one JSON document")
}

#[test]
fn norm_schreier_example() {
    let out = run(&["norm", "--family", "schreier", "--theta", "1/2", "--vector", "2:1,3:1,4:1,5:1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["value"], 1.5);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["stats"]["support"], 4);
    assert!(doc["certificate"]["theta_children"].is_array());
}

#[test]
fn norm_power_point_example() {
    let out = run(&[
        "norm", "--family", "finite-rank:2", "--theta", "root:n=2,q=2", "--vector",
        "1:1,2:1,3:1,4:1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value = json(&out)["value"].as_f64().unwrap();
    assert!((value - 2.0).abs() < 1e-9);
}

#[test]
fn norm_singleton_any_family() {
    for family in ["schreier", "finite-rank:3", "union(finite-rank:2,schreier)"] {
        let out = run(&["norm", "--family", family, "--vector", "7:1"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["value"], 1.0);
    }
}

#[test]
fn norm_check_passes() {
    let out = run(&[
        "norm", "--family", "schreier", "--theta", "1/2", "--vector", "2:1,3:1,4:1,5:1",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checked"], true);
}

#[test]
fn norm_accepts_json_vector() {
    let colon = run(&["norm", "--vector", "1:1,2:0.5"]);
    let json_form = run(&["norm", "--vector", r#"{"1":1,"2":0.5}"#]);
    assert_eq!(json_form.status.code(), Some(0));
    assert_eq!(stdout(&colon), stdout(&json_form));
}

#[test]
fn parse_error_exits_2() {
    let out = run(&["norm", "--vector", "abc"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty(), "data channel must stay clean on errors");
    assert!(!out.stderr.is_empty(), "diagnostics go to stderr");

    let out = run(&["norm"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["bogus-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_exceeded_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_tsirelson"))
        .args(["norm", "--family", "schreier", "--vector", "1:1,2:1,3:1,4:1"])
        .env("TSIRELSON_CAP_DP_SCHREIER", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_oracle_passes() {
    let out = run(&[
        "verify", "oracle", "--family", "schreier", "--theta", "1/2", "--max-supp", "6",
        "--samples", "50", "--seed", "42",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["samples"], 50);
    assert_eq!(doc["counterexample"], serde_json::Value::Null);
}

#[test]
fn verify_step1_rational_theta() {
    let out = run(&["verify", "step1", "--n", "3", "--theta", "1/2", "--samples", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
}

#[test]
fn verify_rejects_bad_claim_and_hypothesis() {
    let out = run(&["verify", "stepX"]);
    assert_eq!(out.status.code(), Some(2));
    // θ = 1/n violates the theorem hypothesis.
    let out = run(&["verify", "step1", "--n", "2", "--theta", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_growth_csv() {
    let out = run(&[
        "sweep", "growth", "--family", "finite-rank:2", "--theta", "root:n=2,q=2", "--m-max",
        "16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,theta,m,norm");
    assert_eq!(lines.len(), 17);
    let norm_at = |m: usize| -> f64 { lines[m].rsplit(',').next().unwrap().parse().unwrap() };
    assert!((norm_at(1) - 1.0).abs() < 1e-9);
    assert!((norm_at(4) - 2.0).abs() < 1e-9);
    assert!((norm_at(16) - 4.0).abs() < 1e-9);
}

#[test]
fn sweep_constants_rows_and_empty_grid() {
    let out = run(&[
        "sweep", "constants", "--n", "2", "--theta-grid", "0.55:0.95:0.2", "--samples", "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,theta,p,samples,seed,c_low,c_high,lower_bound,pass");
    assert_eq!(lines.len(), 4, "three grid points expected");
    for row in &lines[1..] {
        assert!(row.ends_with(",true"), "row should pass: {row}");
    }

    let out = run(&["sweep", "constants", "--n", "2", "--theta-grid", "0.9:0.5:0.1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1, "header-only CSV for an empty grid");
}

#[test]
fn identical_config_identical_bytes() {
    let args = [
        "verify", "oracle", "--family", "finite-rank:2", "--theta", "3/4", "--max-supp", "5",
        "--samples", "40", "--seed", "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());

    let args = ["norm", "--family", "schreier", "--theta", "1/2", "--vector", "2:1,5:-0.5,9:3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_csv_and_text_formats() {
    let out = run(&[
        "verify", "step2", "--n", "2", "--theta", "root:n=2,q=2", "--m-max", "8", "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("claim,seed,samples,worst_ratio,pass,counterexample\n"));
    assert!(text.lines().nth(1).unwrap().starts_with("step2,"));

    let out = run(&[
        "verify", "step2", "--n", "2", "--theta", "root:n=2,q=2", "--m-max", "8", "--format",
        "text",
    ]);
    assert!(stdout(&out).contains("result: PASS"));
}
