//! End-to-end runs of the `photonbox` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_photonbox"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn all_sections_pass_on_defaults() {
    let out = run(&["all"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = stdout_json(&out);
    assert_eq!(report["summary"]["total"], report["summary"]["passed"]);
    assert_eq!(report["tool"]["name"], "photonbox");
    // the vacuum-energy table leads with the standard mode sum
    assert_eq!(report["checks"][0]["values"][0]["exact"], "4");
}

#[test]
fn vacuum_energy_exact_zero_row() {
    let out = run(&["vacuum-energy"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    let checks = report["checks"].as_array().unwrap();
    let modified = checks
        .iter()
        .find(|c| c["name"].as_str().unwrap().contains("modified"))
        .unwrap();
    assert_eq!(modified["values"][0]["exact"], "0");
    assert_eq!(modified["pass"], true);
}

#[test]
fn failing_sum_rule_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"scheme": {"kind": "custom", "c": ["-1", "1/2", "1/2", "1/2"],
            "roles": ["conjugate", "operator", "operator", "operator"]}}"#,
    );
    let out = run(&["--config", &cfg, "verify-commutators"]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert!(report["summary"]["passed"].as_u64() < report["summary"]["total"].as_u64());
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"scheme": {"kind": "modified", "n": ["1/2", "1/2", "1/2"]}}"#,
    );
    let out = run(&["--config", &cfg, "vacuum-energy"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scheme.n"));

    // malformed expression is a usage error too
    let out = run(&["vev", "a[7,0]"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown subcommand
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vev_subcommand_values() {
    let out = run(&["vev", "a[1,0]*ad[1,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["checks"][0]["values"][0]["exact"], "1/3");

    let out = run(&["--scheme", "standard", "vev", "a[0,0]*ad[0,0]"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["checks"][0]["values"][0]["exact"], "-1");
}

#[test]
fn vev_reads_expression_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exprs.txt");
    std::fs::write(&path, "# comment\nad[0,0]*a[0,0]\n\n1/3 + ad[1,0]*a[1,0]\n").unwrap();
    let out = run(&["vev", "--file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["summary"]["total"], 2);
}

#[test]
fn out_directory_receives_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("artifacts");
    let out = run(&["--out", out_dir.to_str().unwrap(), "causality"]);
    assert_eq!(out.status.code(), Some(0));
    let report = std::fs::read_to_string(out_dir.join("report.json")).unwrap();
    assert_eq!(report.as_bytes(), out.stdout.as_slice());
    let csv = std::fs::read_to_string(out_dir.join("causality_scan.csv")).unwrap();
    assert!(csv.starts_with("r,ct,epsilon,closed_form,quadrature,classification"));
    assert_eq!(csv.lines().count(), 301);
    // every ct = 0 row is exactly zero in both columns
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols[1] == "0" {
            assert_eq!(cols[3].parse::<f64>().unwrap(), 0.0);
            assert_eq!(cols[4].parse::<f64>().unwrap(), 0.0);
        }
    }
}

#[test]
fn reports_are_deterministic_modulo_timestamp() {
    let first = run(&["all"]);
    let second = run(&["all"]);
    let mut a = stdout_json(&first);
    let mut b = stdout_json(&second);
    a["timestamp"] = Value::Null;
    b["timestamp"] = Value::Null;
    assert_eq!(a, b);
}

#[test]
fn nmax_override_applies() {
    let out = run(&["--nmax", "3", "verify-commutators"]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["config"]["n_max"], 3);
}
