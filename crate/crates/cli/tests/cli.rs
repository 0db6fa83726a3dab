use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifusion")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), doc)
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn an_prints_exact_rationals() {
    let (code, doc) = json(&["an", "--k", "2", "--count", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["command"], "an");
    assert_eq!(doc["data"]["a"], serde_json::json!(["-1/2"]));
    let (_, doc) = json(&["an", "--k", "4", "--count", "1"]);
    assert_eq!(doc["data"]["a"], serde_json::json!(["-3/2"]));
    let (_, doc) = json(&["an", "--k", "1", "--count", "5"]);
    assert!(doc["data"]["a"].as_array().unwrap().iter().all(|a| a == "0"));
}

#[test]
fn fuse_examples() {
    let (code, doc) = json(&["fuse", "--ring", "z2", "--k", "2", "--perm", "(1 2)", "--modules", "j,j", "--twisted", "1"]);
    assert_eq!(code, 0);
    let result = &doc["data"]["fusions"][0]["result"];
    assert_eq!(result, &serde_json::json!([{"label": "T(1 2)(1)", "multiplicity": 1}]));

    let (code, doc) = json(&["fuse", "--ring", "ising", "--perm", "(1 2)", "--modules", "sigma,sigma", "--twisted", "1"]);
    assert_eq!(code, 0);
    let labels: Vec<&str> =
        doc["data"]["fusions"][0]["result"].as_array().unwrap().iter().map(|t| t["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["T(1 2)(1)", "T(1 2)(epsilon)"]);
}

#[test]
fn unit_modules_leave_twisted_label_unchanged() {
    let (code, doc) = json(&["fuse", "--ring", "fibonacci", "--perm", "(1 3)", "--modules", "1,1,1", "--twisted", "tau,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["data"]["fusions"][0]["result"], serde_json::json!([{"label": "T(1 3)(tau,1)", "multiplicity": 1}]));
}

#[test]
fn fuse_table_covers_every_input() {
    let (code, doc) = json(&["fuse", "--ring", "ising", "--k", "3", "--perm", "(1 2)", "--table"]);
    assert_eq!(code, 0);
    // 3^3 module tuples times 3^2 twisted labels
    assert_eq!(doc["data"]["fusions"].as_array().unwrap().len(), 27 * 9);
    assert_eq!(doc["passed"], true);
}

#[test]
fn verify_suites_pass_at_small_cutoffs() {
    for args in [
        &["verify", "delta", "--k", "2", "--cutoff", "4"][..],
        &["verify", "jacobi", "--k", "3", "--lambda", "1/2", "--cutoff", "1", "--window", "1"],
        &["verify", "transport", "--k", "2", "--lambda", "1/2", "--mu", "1/3", "--cutoff", "1", "--window", "6"],
        &["verify", "genint", "--k", "2", "--cutoff", "2"],
    ] {
        let (code, doc) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(doc["passed"], true);
        let checks = doc["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["passed"] == true && c["checked"].as_u64().unwrap() > 0));
    }
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "delta", "--k", "3", "--cutoff", "2"];
    assert_eq!(strip_timing(json(&args).1), strip_timing(json(&args).1));
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["fuse", "--ring", "ising", "--modules", "sigma,bogus", "--twisted", "1"][..],
        &["fuse", "--ring", "z2", "--k", "3", "--perm", "(1 2", "--modules", "j,j,j", "--twisted", "1"],
        &["fuse", "--ring", "z2", "--perm", "(1 2)", "--modules", "j,j", "--twisted", "1,1"],
        &["fuse", "--ring", "no-such-ring.json", "--modules", "1", "--twisted", "1"],
        &["verify", "jacobi", "--k", "9"],
        &["verify", "delta", "--lambda", "x/y"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn corrupted_ring_file_is_rejected_with_quadruple() {
    let text = orbifusion::fusion::FusionRing::shipped("ising").unwrap().to_json();
    let doc: Value = serde_json::from_str(&text).unwrap();
    let mut doc = doc;
    doc["N"].as_array_mut().unwrap().retain(|e| e != &serde_json::json!(["sigma", "sigma", "epsilon", 1]));
    let path = std::env::temp_dir().join(format!("orbifusion-bad-ising-{}.json", std::process::id()));
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["fuse", "--ring", path.to_str().unwrap(), "--modules", "1,1", "--twisted", "1"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("associativity fails at (a, b, c, d)"));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("orbifusion-report-{}.json", std::process::id()));
    let out = run(&["an", "--k", "3", "--count", "2", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(doc["parameters"]["k"], 3);
}
