use std::path::Path;
use std::process::{Command, Output};

use monogenic::{build_algebra, AlgebraKind};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monogenic"))
        .args(args)
        .env_remove("MONOGENIC_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn record<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["records"].as_array().unwrap().iter().find(|r| r["name"] == name).unwrap()
}

#[test]
fn octonion_algebra_checks_pass() {
    let out = run(&["check-algebra", "--kind", "octonion"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["m"], 7);
    assert_eq!(report["all_passed"], true);
    assert_eq!(record(&report, "moufang")["detail"], "passed");
}

#[test]
fn clifford_moufang_is_implied() {
    let out = run(&["check-algebra", "--kind", "clifford", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let moufang = record(&report, "moufang");
    assert_eq!(moufang["detail"], "implied-by-associativity");
    assert_eq!(moufang["measured_error"], "exact-zero");
}

#[test]
fn malformed_spec_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ \"name\": \"oops\", ").unwrap();
    let out = run(&["check-algebra", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn corrupted_tensor_fails_alternation() {
    let h = build_algebra(&AlgebraKind::Quaternion).unwrap();
    let mut doc: Value = serde_json::from_str(&h.to_json().unwrap()).unwrap();
    // structure is flattened row-major: entry (s, t, u) at (s*4 + t)*4 + u
    let idx = (4 + 2) * 4;
    doc["structure"][idx] = Value::String("1/1".into());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["check-algebra", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(record(&report, "alternation")["status"], "fail");
}

#[test]
fn degree_seven_is_rejected() {
    let out = run(&["verify-monogenic", "--degree-cap", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree"));
}

#[test]
fn unknown_check_is_rejected() {
    let out = run(&["reconstruct", "--checks", "cauchy-interior,no-such-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(run(&["reconstruct", "--epsilon", "0.9"]).status.code(), Some(2));
    assert_eq!(run(&["reconstruct", "--resolution", "2"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quaternion_exact_suite_passes() {
    let out = run(&["verify-monogenic", "--kind", "quaternion", "--degree-cap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    for r in report["records"].as_array().unwrap() {
        assert_eq!(r["measured_error"], "exact-zero", "{}", r["name"]);
        assert!(r["runtime_ms"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn coarse_resolution_fails_but_reports() {
    let out = run(&["reconstruct", "--resolution", "8", "--checks", "cauchy-interior,cauchy-exterior,mean-value"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["all_passed"], false);
    assert_eq!(record(&report, "cauchy-exterior")["status"], "fail");
    assert_eq!(record(&report, "mean-value")["status"], "pass");
    let conv = report["convergence"].as_array().unwrap();
    assert_eq!(conv.len(), 2);
    assert_eq!(conv[0]["resolution"], 4);
}

#[test]
fn csv_has_one_row_per_check() {
    let out = run(&["taylor-demo", "--format", "csv", "--no-timing"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,status,measured_error,tolerance,runtime_ms"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with(",0.000")));
    assert!(rows[0].starts_with("taylor-degree-0,pass"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["reconstruct", "--no-timing", "--resolution", "12", "--checks", "cauchy-interior,teodorescu-inverse"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degree_cap_skips_high_ratios() {
    let out = run(&["taylor-demo", "--degree-cap", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(record(&report, "taylor-ratio-3")["status"], "pass");
    assert_eq!(record(&report, "taylor-ratio-4")["status"], "skip");
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_monogenic"))
        .args(["check-algebra", "--kind", "complex", "--format", "csv"])
        .env("MONOGENIC_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let file = dir.path().join("check-algebra.csv");
    assert!(Path::new(&file).exists());
    assert!(String::from_utf8_lossy(&out.stdout).contains("report written to"));
}

#[test]
fn explicit_out_wins() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("nested/report.json");
    let out = run(&["check-algebra", "--kind", "dual-quaternion", "--out", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(report["config"]["output_path"], file.to_str().unwrap());
}

#[test]
fn in_process_entry_point() {
    assert_eq!(monogenic::cli::main_with_args(["monogenic", "--version"]), 0);
    assert_eq!(monogenic::cli::main_with_args(["monogenic", "verify-monogenic", "--degree-cap", "9"]), 2);
}
