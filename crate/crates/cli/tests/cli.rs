//! End-to-end tests of the cbgon binary: JSON contract, determinism
//! across runs and worker counts, and the exit-code convention.

use std::io::Write;
use std::process::{Command, Output};

fn cbgon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbgon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("cbgon-test-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

const FOUR_POINTS: &str = r#"{
  "format_version": 1,
  "rational": true,
  "ambient_dim": 2,
  "points": [[1, 0, 1], [0, 1, 1], [1, 1, 2], [1, 0, 0]]
}"#;

#[test]
fn cb_check_reports_the_four_point_configuration() {
    let points = write_temp("four-points.json", FOUR_POINTS);
    let out = cbgon(&["cb-check", "--points", points.to_str().unwrap(), "--degree", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["format_version"], 1);
    assert_eq!(v["operation"], "cb-check");
    assert_eq!(v["verdict"], "REPORT");
    assert_eq!(v["data"]["cb"], false);
    assert_eq!(v["data"]["conditions"]["independent"], false);
    assert_eq!(v["data"]["conditions"]["rank"], 3);
}

#[test]
fn indep_check_matches_cb_check_conditions() {
    let points = write_temp("four-points2.json", FOUR_POINTS);
    let out = cbgon(&["indep-check", "--points", points.to_str().unwrap(), "--degree", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["failure_index"], 1);
    assert_eq!(v["data"]["subscheme_degree"], 4);
}

#[test]
fn gonality_emits_the_formula_values() {
    let out = cbgon(&["gonality", "--type", "4,5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["lazarsfeld_lower"], 15);
    assert_eq!(v["data"]["generic_gonality"], 16);
    assert_eq!(v["data"]["gonality_lower"], 15);
    assert_eq!(v["data"]["gonality_upper"], 17);
}

#[test]
fn dim_audit_reports_the_gap() {
    let out = cbgon(&["dim-audit", "--type", "4,5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["dim_incidence_big"], 88);
    assert_eq!(v["data"]["dim_tuple_space"], 89);
    assert_eq!(v["data"]["incidence_cannot_dominate"], true);
}

#[test]
fn cbconj_scan_passes_and_is_byte_identical_across_workers() {
    let args = ["cbconj-scan", "--grid", "2,2,4", "--e", "0", "--prime", "101", "--seed", "7"];
    let first = cbgon(&args);
    assert!(first.status.success(), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["seed"], 7);
    assert!(v["data"]["min_failing_degree"].as_u64().unwrap() >= 4);

    let again = cbgon(&args);
    assert_eq!(first.stdout, again.stdout, "same argv must be byte-identical");

    let one_worker = cbgon(&[&args[..], &["--workers", "1"]].concat());
    let four_workers = cbgon(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one_worker.stdout, first.stdout, "worker count must not change output");
    assert_eq!(four_workers.stdout, first.stdout);
}

#[test]
fn project_and_fibers_agree_on_a_conic() {
    let conic = write_temp(
        "conic.json",
        r#"{ "prime": 11, "ambient_dim": 2, "forms": ["x0*x1 - x2^2"] }"#,
    );
    let out = cbgon(&[
        "project",
        "--instance",
        conic.to_str().unwrap(),
        "--center-form",
        "x1",
        "--center-form",
        "x2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["projection_degree"], 1);
    assert_eq!(v["data"]["curve_degree"], 2);

    let out = cbgon(&[
        "fibers",
        "--instance",
        conic.to_str().unwrap(),
        "--center-form",
        "x1",
        "--center-form",
        "x2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["fibers"].as_array().unwrap().len(), 12);
    let sizes: u64 = v["data"]["fibers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["size"].as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 11);
}

#[test]
fn text_format_renders_a_table() {
    let out = cbgon(&["gonality", "--type", "4,5", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("operation : gonality"));
    assert!(text.contains("generic_gonality : 16"));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("cbgon-out-{}.json", std::process::id()));
    let out = cbgon(&["gonality", "--type", "4,5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["operation"], "gonality");
    std::fs::remove_file(path).ok();
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand.
    assert_eq!(cbgon(&["no-such-op"]).status.code(), Some(2));
    // cbconj-scan without a field.
    let out = cbgon(&["cbconj-scan", "--grid", "2,2,4", "--e", "0"]);
    assert_eq!(out.status.code(), Some(2));
    // Conflicting field flags.
    let points = write_temp("four-points3.json", FOUR_POINTS);
    let out = cbgon(&[
        "cb-check",
        "--points",
        points.to_str().unwrap(),
        "--degree",
        "1",
        "--prime",
        "7",
        "--rational",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Field disagreeing with the instance file.
    let out = cbgon(&[
        "cb-check",
        "--points",
        points.to_str().unwrap(),
        "--degree",
        "1",
        "--prime",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // e out of the theorem's range.
    let out = cbgon(&["cbconj-scan", "--grid", "2,2,4", "--e", "5", "--prime", "101"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_runs_a_single_criterion() {
    let out = cbgon(&["verify-suite", "--criterion", "1"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
    let criteria = v["data"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 1);
    assert_eq!(criteria[0]["passed"], true);
    // The human-readable line goes to stderr.
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion 1"));
}
