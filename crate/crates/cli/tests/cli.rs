use std::path::PathBuf;
use std::process::{Command, Output};

use liewedge_cli::report::strip_timing;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liewedge")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn verdict(r: &Value, id: &str) -> Option<String> {
    r["checks"].as_array()?.iter().find(|c| c["id"] == id).map(|c| c["verdict"].as_str().unwrap().to_string())
}

#[test]
fn catalog_listing_and_entry() {
    let out = run(&["catalog"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out)["summary"]["names"].as_array().unwrap().len() >= 7);
    let out = run(&["catalog", "ex318"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["schema"], "liewedge.report/1");
    assert_eq!(r["summary"]["dim"], 9);
    let out = run(&["catalog", "--input", "catalog:oscillator"]);
    assert_eq!(report(&out)["summary"]["dim"], 4);
}

#[test]
fn build_reports_center_and_derived_algebra() {
    let out = run(&["build", "--input", &fixture("sl2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["center"].as_array().unwrap().len(), 0);
    assert_eq!(r["summary"]["derived_subalgebra"].as_array().unwrap().len(), 3);
    let out = run(&["build", "--input", &fixture("jacobi1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(verdict(&report(&out), "spindler.convex-type").as_deref(), Some("pass"));
}

#[test]
fn antisymmetry_violation_names_the_triple() {
    let out = run(&["build", "--input", &fixture("bad_antisymmetry.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(0, 1, 2)"), "{err}");
    assert!(err.contains("algebra.brackets"), "{err}");
}

#[test]
fn deferred_jacobi_check_becomes_a_verdict() {
    let out = run(&["build", "--input", &fixture("bad_jacobi.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["build", "--input", &fixture("bad_jacobi.json"), "--defer-jacobi-check"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(verdict(&report(&out), "algebra.jacobi-identity").as_deref(), Some("fail"));
}

#[test]
fn parse_errors_exit_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = dir.path().join("unknown.json");
    std::fs::write(&unknown, r#"{"algebra": {"labels": [], "extra": 1}}"#).unwrap();
    let out = run(&["build", "--input", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));

    let bad_rational = dir.path().join("bad.json");
    std::fs::write(
        &bad_rational,
        r#"{"algebra": {"labels": ["a", "b"], "brackets": [{"i": 0, "j": 1, "k": 0, "c": "1/0"}]}}"#,
    )
    .unwrap();
    let out = run(&["build", "--input", bad_rational.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebra.brackets[0].c"));

    assert_eq!(run(&["build"]).status.code(), Some(3));
    assert_eq!(run(&["build", "--input", "/no/such/file.json"]).status.code(), Some(3));
}

#[test]
fn validation_errors_carry_field_paths() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.json");
    std::fs::write(&path, r#"{"spindler": {"l": {"labels": []}, "dim_v": 2, "beta": [[["0", "1"], ["-1"]]]}}"#)
        .unwrap();
    let out = run(&["build", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("spindler.beta[0][1]"));

    let out = run(&["cone-span", "--input", &fixture("heis1.json"), "--functional", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("functional"));

    assert_eq!(run(&["catalog", "su(2,1)"]).status.code(), Some(2));
}

#[test]
fn derivations_of_heisenberg_split_into_blocks() {
    let out = run(&["derivations", "--input", &fixture("heis1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["dim_der"], 6);
    assert_eq!(r["summary"]["dim_inner"], 2);
    assert_eq!(verdict(&r, "derivations.heisenberg-blocks").as_deref(), Some("pass"));
}

#[test]
fn classify_reports_each_condition() {
    let out = run(&["classify", "--input", &fixture("jacobi1.json"), "--derivation", &fixture("h_zero.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(verdict(&r, "classification.condition-1").as_deref(), Some("pass"));
    assert_eq!(verdict(&r, "classification.condition-2").as_deref(), Some("pass"));
    assert_eq!(verdict(&r, "classification.condition-3").as_deref(), Some("fail"));

    let out = run(&["classify", "--input", &fixture("jacobi1.json"), "--derivation", &fixture("conformal.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(verdict(&r, "grading.three-grading").as_deref(), Some("fail"));

    let out = run(&["classify", "--input", "catalog:ex319(3)"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn cone_span_from_file_and_boundary_witness() {
    let out = run(&["cone-span", "--input", &fixture("jacobi1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["certificates"].as_array().unwrap().len(), 2);
    let out = run(&["cone-span", "--input", &fixture("jacobi1_boundary.json"), "--max-halvings", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(verdict(&report(&out), "cones.span.plus").as_deref(), Some("inconclusive"));
}

#[test]
fn report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["cone-span", "--input", "catalog:ex318", "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let again = run(&["cone-span", "--input", "catalog:ex318"]);
    assert_eq!(strip_timing(&written).unwrap(), strip_timing(&String::from_utf8(again.stdout).unwrap()).unwrap());
}

#[test]
fn no_go_with_explicit_candidates() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("candidates.json");
    // Zero and the scaling derivation (v, z, x) -> (v, 2z, 0), whose
    // eigenvalue 2 rules out a 3-grading.
    let zero = vec![vec!["0"; 4]; 4];
    let mut scaling = zero.clone();
    scaling[0][0] = "1";
    scaling[1][1] = "1";
    scaling[2][2] = "2";
    let doc = serde_json::json!({ "candidates": [zero, scaling] });
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["no-go", "--input", "catalog:oscillator", "--derivation", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["survivors"], serde_json::json!([0]));
    assert_eq!(r["summary"]["outcomes"]["no_grading"], 1);
}
