use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintic-rank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_55() {
    let out = run(&["classify", "55"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["form"], "R2_1");
    assert_eq!(v["predicted_rank"], 2);
    assert_eq!(v["n"], 55);
    assert_eq!(v["canonical_n"], 55);
    for key in [
        "d",
        "q_star",
        "zeta_norm",
        "lambda_ramified",
        "conjecture_cyclic",
        "associate_t",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn classify_degenerate() {
    let out = run(&["classify", "32"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate radicand"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors() {
    assert!(!run(&["classify", "abc"]).status.success());
    assert!(!run(&["classify", "1"]).status.success());
    assert!(!run(&["enumerate", "--max", "10", "--format", "xml"])
        .status
        .success());
    assert!(!run(&["enumerate", "--max", "10", "--form", "R9_9"])
        .status
        .success());
    assert!(!run(&["enumerate", "--max", "100", "--form", "NotCovered"])
        .status
        .success());
}

#[test]
fn verify_paper_tables_exits_zero() {
    let out = run(&["verify-paper-tables"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("composite-stated-prime"));
    assert!(text.contains("13*43"));
    assert!(text.contains("3035"));
    assert_eq!(text, stdout(&run(&["verify-paper-tables"])));
}

#[test]
fn oracle_check_passes() {
    let out = run(&["oracle-check", "--max-prime", "10000"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0 mismatches"));
}

#[test]
fn enumerate_form_tables() {
    let csv = stdout(&run(&[
        "enumerate",
        "--max",
        "300",
        "--form",
        "R2_3",
        "--format",
        "csv",
    ]));
    assert!(csv.lines().any(|l| l.starts_with("151,151,")));

    let md = stdout(&run(&[
        "enumerate",
        "--max",
        "25000",
        "--form",
        "r1_5",
        "--format",
        "md",
    ]));
    let first = md.lines().nth(2).unwrap();
    assert!(first.starts_with("| 149 | 149 | -1 | -1 |"), "{first}");
    assert!(first.ends_with("| 22201 |"), "{first}");

    let json = stdout(&run(&[
        "enumerate",
        "--max",
        "10",
        "--form",
        "R1_5",
        "--format",
        "json",
    ]));
    assert_eq!(
        serde_json::from_str::<Value>(&json).unwrap(),
        serde_json::json!([])
    );
}

#[test]
fn enumerate_records() {
    let json = stdout(&run(&[
        "enumerate",
        "--max",
        "2000",
        "--rank",
        "2",
        "--format",
        "json",
    ]));
    let v: Vec<Value> = serde_json::from_str(&json).unwrap();
    assert!(!v.is_empty());
    assert!(v.iter().all(|r| r["predicted_rank"] == 2));
    assert!(v.iter().any(|r| r["n"] == 55));

    let canonical = stdout(&run(&[
        "enumerate",
        "--max",
        "25000",
        "--form",
        "R1_5",
        "--rank",
        "2",
        "--format",
        "csv",
    ]));
    assert_eq!(canonical.lines().count(), 1);

    let raw = stdout(&run(&[
        "enumerate",
        "--max",
        "25000",
        "--form",
        "R1_5",
        "--raw",
        "--format",
        "csv",
    ]));
    assert!(raw.lines().any(|l| l.starts_with("22201,149,")));
}
