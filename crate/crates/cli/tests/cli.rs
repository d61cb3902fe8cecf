//! End-to-end tests for the `nsmac` binary: output values, exit codes,
//! canonicalization notices, determinism.

use std::process::{Command, Output};

fn nsmac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsmac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn compute_pinned_value_text() {
    let out = nsmac(&[
        "compute", "--type", "A1", "--lambda", "2", "--w", "s1", "--model", "qls",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x^[2] + 1 + q + x^[-2]");
}

#[test]
fn compute_zero_weight_is_one() {
    let out = nsmac(&["compute", "--type", "A1", "--lambda", "0", "--w", "e"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn compute_canonicalizes_with_notice() {
    // s2 ∈ W_J for λ = ϖ1, so the result is the one for ⌊s2⌋ = e
    let out = nsmac(&["compute", "--type", "A2", "--lambda", "1,0", "--w", "s2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("canonicalized"));
    assert_eq!(stdout(&out).trim(), "x^[1,0]");
}

#[test]
fn compute_json_schema() {
    let out = nsmac(&[
        "compute", "--type", "A1", "--lambda", "2", "--w", "s1", "--model", "qls", "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["type"], "A1");
    assert_eq!(v["lambda"][0], 2);
    assert_eq!(v["w"], "s1");
    assert_eq!(v["model"], "qls");
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 4);
    assert!(terms
        .iter()
        .any(|t| t["wt"][0] == 2 && t["q"] == 0 && t["c"] == 1));
    assert!(terms
        .iter()
        .any(|t| t["wt"][0] == 0 && t["q"] == 1 && t["c"] == 1));
}

#[test]
fn compute_latex_format() {
    let out = nsmac(&[
        "compute", "--type", "A1", "--lambda", "2", "--w", "e", "--format", "latex",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "e^{\\lambda} + q e^{\\lambda - \\alpha_{1}}"
    );
}

#[test]
fn crosscheck_all_w() {
    let out = nsmac(&["crosscheck", "--type", "A1", "--lambda", "2", "--all-w"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("2/2 agree (4 models)"));
    let out = nsmac(&["crosscheck", "--type", "A2", "--lambda", "1,1", "--all-w"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("6/6 agree (4 models)"));
}

#[test]
fn crosscheck_zero_weight_trivially_agrees() {
    let out = nsmac(&["crosscheck", "--type", "B2", "--lambda", "0,0", "--all-w"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1/1 agree"));
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["compute", "--type", "Z9", "--lambda", "1"],
        vec!["compute", "--type", "A2", "--lambda", "1"],
        vec!["compute", "--type", "A2", "--lambda", "1,-1"],
        vec!["compute", "--type", "A2", "--lambda", "1,0", "--w", "s9"],
        vec!["compute", "--type", "A2"],
    ] {
        let out = nsmac(&args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn io_errors_exit_4() {
    let out = nsmac(&[
        "compute",
        "--type",
        "A1",
        "--lambda",
        "1",
        "--out",
        "/nonexistent-dir/x.txt",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn export_qbg_dot() {
    let out = nsmac(&["export", "qbg", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = stdout(&out);
    assert_eq!(
        dot.matches("label=").count(),
        6 + 15,
        "6 vertices, 15 edges"
    );
    assert!(dot.contains("style=dashed"));
    // parabolic graph for λ = ϖ1: a 3-cycle (two Bruhat edges, one quantum)
    let out = nsmac(&["export", "qbg", "--type", "A2", "--lambda", "1,0"]);
    let dot = stdout(&out);
    assert_eq!(dot.matches("[label=\"").count(), 3, "3 vertices");
    assert_eq!(dot.matches("->").count(), 3, "3 edges");
    assert_eq!(dot.matches("style=dashed").count(), 1);
}

#[test]
fn export_chain_and_qls_and_admissible() {
    let out = nsmac(&["export", "chain", "--type", "A1", "--lambda", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);

    let out = nsmac(&["export", "qls", "--type", "A1", "--lambda", "0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);

    let out = nsmac(&["export", "admissible", "--type", "A1", "--lambda", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 4);
    assert!(arr.iter().any(|a| a["coheight"] == 1));
    // chain export requires a weight
    let out = nsmac(&["export", "chain", "--type", "A1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_jobs_are_byte_identical() {
    let args = [
        "compute", "--type", "B2", "--lambda", "1,1", "--w", "s1 s2", "--format", "json",
    ];
    let a = nsmac(&args);
    let b = nsmac(&args);
    assert_eq!(stdout(&a), stdout(&b));
    assert!(!stdout(&a).is_empty());
    let args = ["crosscheck", "--type", "C2", "--lambda", "0,1", "--all-w"];
    let a = nsmac(&args);
    let b = nsmac(&args);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn out_file_writing() {
    let dir = std::env::temp_dir().join("nsmac-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poly.txt");
    let out = nsmac(&[
        "compute",
        "--type",
        "A1",
        "--lambda",
        "2",
        "--w",
        "s1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let content = std::fs::read_to_string(&path).unwrap();
    assert_eq!(content.trim(), "x^[2] + 1 + q + x^[-2]");
}

#[test]
fn chain_tiebreak_changes_chain_not_polynomial() {
    let base = nsmac(&[
        "compute", "--type", "A2", "--lambda", "1,1", "--w", "w0", "--model", "alcove",
    ]);
    let alt = nsmac(&[
        "compute",
        "--type",
        "A2",
        "--lambda",
        "1,1",
        "--w",
        "w0",
        "--model",
        "alcove",
        "--chain-tiebreak",
        "s2 s1 s2",
    ]);
    assert_eq!(out_trim(&base), out_trim(&alt));
    let chain_a = nsmac(&[
        "export",
        "chain",
        "--type",
        "A2",
        "--lambda",
        "1,1",
        "--chain-tiebreak",
        "s1 s2 s1",
    ]);
    let chain_b = nsmac(&[
        "export",
        "chain",
        "--type",
        "A2",
        "--lambda",
        "1,1",
        "--chain-tiebreak",
        "s2 s1 s2",
    ]);
    assert_ne!(out_trim(&chain_a), out_trim(&chain_b));
    // invalid tie-break word: not reduced for w0
    let bad = nsmac(&[
        "export",
        "chain",
        "--type",
        "A2",
        "--lambda",
        "1,1",
        "--chain-tiebreak",
        "s1 s1 s1",
    ]);
    assert_eq!(bad.status.code(), Some(2));
}

fn out_trim(out: &Output) -> String {
    stdout(out).trim().to_string()
}
