//! End-to-end runs of the `qschub` binary: exit codes, output shape and
//! determinism of the JSON form.

use std::process::{Command, Output};

use serde_json::Value;

fn qschub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qschub")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = qschub(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn roots_counts() {
    assert_eq!(json(&["roots", "--type", "A", "--rank", "2"])["positive_root_count"], 3);
    assert_eq!(json(&["roots", "--type", "F", "--rank", "4"])["positive_root_count"], 24);
}

#[test]
fn qmul_a2_divisor_square() {
    let v = json(&["qmul", "--type", "A", "--rank", "2", "--u", "1", "--v", "1"]);
    let terms = v["terms"].as_array().unwrap();
    let shown: Vec<(Value, Value, Value)> =
        terms.iter().map(|t| (t["word"].clone(), t["q"].clone(), t["coeff"].clone())).collect();
    assert_eq!(shown.len(), 2);
    assert!(shown.contains(&(serde_json::json!([2, 1]), serde_json::json!([0, 0]), "1/1".into())));
    assert!(shown.contains(&(serde_json::json!([]), serde_json::json!([1, 0]), "1/1".into())));
}

#[test]
fn json_output_is_byte_identical() {
    let args = ["verify", "--suite", "tables", "--which", "5", "--format", "json"];
    let (a, b) = (qschub(&args), qschub(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn suites_and_exit_codes() {
    assert_eq!(qschub(&["verify", "--suite", "example12"]).status.code(), Some(0));
    assert_eq!(qschub(&["verify", "--suite", "tables", "--which", "5"]).status.code(), Some(0));
    assert_eq!(qschub(&["verify", "--suite", "corrupted-grading"]).status.code(), Some(1));
    assert_eq!(qschub(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(qschub(&["roots", "--type", "E", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(qschub(&["qmul", "--type", "A", "--rank", "2", "--u", "1,9"]).status.code(), Some(2));
    assert_eq!(qschub(&["qmul", "--type", "E", "--rank", "8", "--u", "1", "--v", "1"]).status.code(), Some(3));
}

#[test]
fn qpmul_requires_coset_representatives() {
    let ok = json(&["qpmul", "--type", "A", "--rank", "2", "--parabolic", "1", "--u", "1,2", "--v", "1,2"]);
    let t = &ok["terms"].as_array().unwrap()[0];
    assert_eq!(t["word"], serde_json::json!([2]));
    assert_eq!(t["q"], serde_json::json!([1]));
    let bad = qschub(&["qpmul", "--type", "A", "--rank", "2", "--parabolic", "1", "--u", "1", "--v", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn preset_parabolics_pick_an_ambient() {
    let v = json(&["grade", "--parabolic", "C9:2"]);
    assert_eq!(v["coroot_grades"].as_array().unwrap().len(), 4);
    let v = json(&["pwlift", "--parabolic", "C1B:2", "--lambda", "0,0,1"]);
    assert!(v["lambda_b"].is_array());
}

#[test]
fn out_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("qschub-roots-{}.json", std::process::id()));
    let out = qschub(&["roots", "--type", "G", "--rank", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["positive_root_count"], 6);
    std::fs::remove_file(path).ok();
}
