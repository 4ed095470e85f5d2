//! End-to-end tests of the `sendov` binary: exit codes, file outputs, and
//! byte-level determinism of the JSON bodies.

use std::path::Path;
use std::process::Command;

fn sendov() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sendov"))
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).expect("output file exists")
}

#[test]
fn check_small_run_is_clean_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");

    let status = sendov()
        .args([
            "check", "--n", "9", "--count", "30", "--seed", "42", "--tol", "1e-8",
        ])
        .arg("--out")
        .arg(&out1)
        .arg("--workers")
        .arg("1")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    let status2 = sendov()
        .args([
            "check", "--n", "9", "--count", "30", "--seed", "42", "--tol", "1e-8",
        ])
        .arg("--out")
        .arg(&out2)
        .arg("--workers")
        .arg("2")
        .status()
        .unwrap();
    assert_eq!(status2.code(), Some(0));

    // byte-identical JSON bodies regardless of worker count
    assert_eq!(read(&out1), read(&out2));
    // CSV sidecar exists with one row per (check, instance)
    let csv = read(&dir.path().join("r1.csv"));
    assert!(csv.lines().next().unwrap().starts_with("check_id,instance"));
    assert_eq!(
        read(&dir.path().join("r1.csv")),
        read(&dir.path().join("r2.csv"))
    );
}

#[test]
fn check_tolerance_starvation_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = sendov()
        .args([
            "check", "--n", "9", "--count", "5", "--seed", "42", "--tol", "1e-20",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn check_injected_golden_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst_path = dir.path().join("golden.json");
    std::fs::write(
        &inst_path,
        r#"{"n": 9, "a": 0.5, "zeros": [[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0],[-0.5,0]]}"#,
    )
    .unwrap();
    let out = dir.path().join("r.json");
    let status = sendov()
        .args([
            "check", "--n", "9", "--count", "1", "--seed", "1", "--tol", "1e-8",
        ])
        .arg("--instance")
        .arg(&inst_path)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    let aggregates = report["aggregates"].as_array().unwrap();
    assert!(!aggregates.is_empty());
    for agg in aggregates {
        assert_eq!(agg["failures"].as_u64(), Some(0), "{agg}");
    }
}

#[test]
fn certify_all_claims_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("c1.json");
    let out2 = dir.path().join("c2.json");
    for out in [&out1, &out2] {
        let status = sendov()
            .args(["certify", "--max-depth", "48"])
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(read(&out1), read(&out2));

    let parsed: serde_json::Value = serde_json::from_str(&read(&out1)).unwrap();
    let claims = parsed["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 8);
    for claim in claims {
        assert_eq!(
            claim["certified"].as_bool(),
            Some(true),
            "{}",
            claim["claim"]
        );
    }
    // part-level certificate shape
    let part = &claims[0]["parts"][0];
    assert!(part["status"].is_string());
    assert!(part["boxes"].is_u64());
    assert!(part["max_depth"].is_u64());
    assert!(part["domain"].is_object());
}

#[test]
fn certify_depth_starvation_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let status = sendov()
        .args(["certify", "--claims", "C2", "--max-depth", "2"])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(4));
    let parsed: serde_json::Value = serde_json::from_str(&read(&out)).unwrap();
    assert_eq!(parsed["claims"][0]["certified"].as_bool(), Some(false));
    assert_eq!(
        parsed["claims"][0]["parts"][0]["status"].as_str(),
        Some("inconclusive")
    );
}

#[test]
fn search_small_run_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("s1.json");
    let out2 = dir.path().join("s2.json");
    for out in [&out1, &out2] {
        let status = sendov()
            .args(["search", "--n", "9", "--restarts", "3", "--seed", "7"])
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    assert_eq!(read(&out1), read(&out2));
    let parsed: serde_json::Value = serde_json::from_str(&read(&out1)).unwrap();
    let best_i = parsed["best_i"].as_f64().unwrap();
    assert!((0.99..=1.0 + 1e-6).contains(&best_i), "best_i = {best_i}");
    assert_eq!(parsed["conjecture_flag"].as_bool(), Some(false));
}

#[test]
fn measure_reports_both_scales() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("poly.json");
    std::fs::write(&poly, r#"{"coeffs": [[-2.0, 0.0], [1.0, 0.0]]}"#).unwrap();
    let output = sendov()
        .args(["measure", "--rho", "1.0", "--m", "0.25", "--nodes", "4096"])
        .arg("--poly")
        .arg(&poly)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    let m = parsed["mahler"]["closed_form_value"].as_f64().unwrap();
    assert!((m - 2.0).abs() <= 1e-10);
    let q = parsed["mahler"]["quadrature_value"].as_f64().unwrap();
    assert!((q - 2.0).abs() <= 1e-9);
    assert!(parsed["scaled"]["report"]["quadrature_value"].is_f64());
}

#[test]
fn usage_and_io_errors_exit_1() {
    // unknown flag
    let status = sendov().args(["check", "--bogus"]).status().unwrap();
    assert_eq!(status.code(), Some(1));
    // missing input file
    let status2 = sendov()
        .args(["measure", "--poly", "/nonexistent/poly.json"])
        .status()
        .unwrap();
    assert_eq!(status2.code(), Some(1));
}
