use std::process::{Command, Output};

use kummerlab::report::has_float;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummerlab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("one JSON object")
}

#[test]
fn worked_commands_exit_zero_with_integer_json() {
    let cases: &[&[&str]] = &[
        &["maps", "--lambda", "5", "--p", "11"],
        &["factor", "--lambda", "5", "1 - a"],
        &["valuation", "--lambda", "3", "--p", "7", "2 + 3a"],
        &["jacobi-sum", "--p", "13", "--order", "4"],
        &["fc-check", "--p", "13", "--i", "8", "--k", "9"],
        &["stickelberger", "--lambda", "5", "--p", "11"],
        &["quartic", "--p", "13"],
        &["monoid", "classgroup"],
        &["monoid", "factor", "441"],
        &["monoid", "demo-singular"],
        &["quad", "--theta", "0,3", "conductor"],
        &["quad", "--theta", "0,3", "gauss-lemma", "1,1"],
    ];
    for args in cases {
        let v = json(args);
        assert_eq!(v["schema"], "kummerlab/1", "{args:?}");
        assert_eq!(v["pass"], true, "{args:?}");
        assert!(!has_float(&v), "{args:?}");
    }
}

#[test]
fn monoid_441_has_two_factorizations() {
    let v = json(&["monoid", "factor", "441"]);
    let text = v["result"].to_string();
    assert!(text.contains("[21,21]") && text.contains("[9,49]"), "{text}");
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = run(&["factor", "--lambda", "5", "1 + + a"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("column 5"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["maps", "--lambda", "5"]).status.code(), Some(2));
    assert_eq!(run(&["maps", "--lambda", "6", "--p", "7"]).status.code(), Some(2));
    assert_eq!(run(&["fc-check", "--p", "13", "--i", "6", "--k", "6"]).status.code(), Some(2));
    assert_eq!(run(&["quad", "--theta", "0,-4", "conductor"]).status.code(), Some(2));
    assert_eq!(run(&["monoid", "--m", "4", "factor", "3"]).status.code(), Some(2));
}

#[test]
fn reproduce_filter_and_summary() {
    let out = run(&["--json", "--filter", "monoid", "reproduce"]);
    assert!(out.status.success());
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, claims) = lines.split_last().unwrap();
    assert!(!claims.is_empty());
    assert!(claims.iter().all(|c| c["group"] == "monoid" && c["pass"] == true));
    assert_eq!(summary["summary"]["total"], claims.len());
    assert!(lines.iter().all(|v| !has_float(v)));

    let out = run(&["--filter", "quad/sqrt-3/prime-square", "reproduce"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("PASS quad/sqrt-3/prime-square"), "{text}");
    assert!(text.ends_with("1/1 claims passed\n"), "{text}");

    assert_eq!(run(&["--filter", "nonexistent", "reproduce"]).status.code(), Some(2));
}
