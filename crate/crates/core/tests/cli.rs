//! End-to-end runs of the built binary.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bezout-qe")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn qe_prints_the_eliminated_formula() {
    let (code, out, _) = run(&["--backend", "z_loc:2", "qe", "--formula", "E x . x*2 = y"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "V[v(2)](y)");
}

#[test]
fn decompose_emits_json() {
    let (code, out, _) = run(&["--backend", "z", "--format", "json", "decompose", "--formula", "E x . x*6 = y"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pieces"][0]["body"], "V[v(6)](y)");
    assert_eq!(v["backend"]["ring_id"], "Z");
}

#[test]
fn decide_reports_verdict_and_refusal() {
    let (code, out, _) =
        run(&["--backend", "q_poly", "decide", "--sentence", "Inv(x*(T - 1) = 0 | x*(T^2 - 1) = 0) =1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("valid"), "{out}");
    let (code, _, err) = run(&["--backend", "z", "decide", "--sentence", "Inv(x*2 = 0 | x = 0) >1"]);
    assert_eq!(code, 3);
    assert!(err.contains("the quotient B/M is infinite"), "{err}");
}

#[test]
fn bad_input_exits_two() {
    let (code, _, err) = run(&["--backend", "z_loc:2", "qe", "--formula", "E x . x* = y"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}
