use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootcert")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rootcert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn conjecture<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["conjectures"].as_array().unwrap().iter().find(|c| c["conjecture"] == id).unwrap()
}

#[test]
fn analyze_q15() {
    let (code, r) = run_json(&["analyze", fixture("q15.txt").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["oracle"]["total_with_multiplicity"], 13);
    assert_eq!(r["q_sequence"]["8"], "27/28");
    let c3 = conjecture(&r, "LogConcaveC3");
    assert_eq!(c3["violated"], true);
    assert!(c3["predicted_bound"].as_u64().unwrap() <= 11);
    assert_eq!(r["agreement"], true);
}

#[test]
fn analyze_x2_plus_1() {
    let (code, r) = run_json(&["analyze", fixture("x2_plus_1.txt").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["oracle"]["total_with_multiplicity"], 0);
    assert_eq!(r["combined"], serde_json::json!([0, 0]));
    let fired: Vec<&str> = r["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["fired"] == true)
        .map(|c| c["criterion"].as_str().unwrap())
        .collect();
    assert_eq!(fired, vec!["ThmD"]);
}

#[test]
fn analyze_sharp_thm2_n10() {
    let (code, r) = run_json(&["analyze", fixture("sharp_thm2_n10.txt").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["oracle"]["total_with_multiplicity"], 8);
    for c in r["certificates"].as_array().unwrap() {
        if c["direction"] == "UpperBound" {
            assert_eq!(c["fired"], false, "{}", c["criterion"]);
        }
    }
}

#[test]
fn contradicting_certificate_exits_3() {
    let out = run(&["analyze", fixture("sum_bound_counterexample.txt").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["contradictions"], serde_json::json!(["Thm1"]));
    assert_eq!(r["oracle"]["total_with_multiplicity"], 3);
}

#[test]
fn gen_round_trip() {
    let out = run(&["gen", "sharp-thm2", "--n", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    let path = tmp("thm2_5.txt", &text);
    let (code, r) = run_json(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["q_sequence"]["1"], "20/9");
    assert_eq!(r["q_sequence"]["4"], "20/9");
    assert_eq!(r["oracle"]["total_with_multiplicity"], 3);
}

#[test]
fn oracle_text() {
    let out = run(&["oracle", fixture("sharp_thm2_n10.txt").to_str().unwrap(), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("real roots: 8 (distinct 1)"));
}

#[test]
fn verify_conjecture_3() {
    let (code, r) = run_json(&["verify-conjecture", "--id", "3", "--n-max", "20"]);
    assert_eq!(code, 0);
    let arr = r.as_array().unwrap();
    assert_eq!(arr.len(), 6);
    assert!(arr.iter().all(|x| x["violated"] == true));
}

#[test]
fn cone_check_hutchinson() {
    let spec = tmp("hutch.json", r#"{"sigma": [">", ">", ">"], "epsilon": ["4", "4", "4"], "non_strict": true}"#);
    let poly = tmp("q444.txt", "1\n1\n1/4\n1/64\n1/4096\n");
    let (code, r) = run_json(&["cone-check", "--spec", spec.to_str().unwrap(), poly.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["member"], true);
    assert_eq!(r["q"], serde_json::json!(["4", "4", "4"]));

    let strict = tmp("hutch_strict.json", r#"{"sigma": [">", ">", ">"], "epsilon": ["4", "4", "4"]}"#);
    let (_, r) = run_json(&["cone-check", "--spec", strict.to_str().unwrap(), poly.to_str().unwrap()]);
    assert_eq!(r["member"], false);
}

#[test]
fn cone_sample_is_deterministic() {
    let spec = tmp("hutch5.json", r#"{"sigma": [">", ">", ">", ">"], "epsilon": ["4", "4", "4", "4"], "non_strict": true}"#);
    let args = ["cone-sample", "--spec", spec.to_str().unwrap(), "--n", "5", "--count", "100", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let r: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(r["histogram"]["5"], 100);
}

#[test]
fn bad_input_exits_2() {
    let bad = tmp("bad.txt", "1\nfoo\n");
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/poly.txt"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "sharp-pr1", "--n", "6", "--m", "4", "--j", "2"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "counterexample-q", "--n", "14"]).status.code(), Some(2));
    assert_eq!(run(&["verify-conjecture", "--id", "4", "--n-max", "20"]).status.code(), Some(2));
    let spec = tmp("short.json", r#"{"sigma": [">"], "epsilon": ["4"]}"#);
    let poly = tmp("cubic.txt", "1\n1\n1\n1\n");
    assert_eq!(run(&["cone-check", "--spec", spec.to_str().unwrap(), poly.to_str().unwrap()]).status.code(), Some(2));
}
