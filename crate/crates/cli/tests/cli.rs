use std::path::PathBuf;
use std::process::{Command, Output};

use neron_core::document::{analyze_document, parse_report};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn neron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neron")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn machine(name: &str, extra: &[&str]) -> Value {
    let path = fixture(name);
    let mut args = vec!["analyze", path.to_str().unwrap(), "--format", "machine"];
    args.extend_from_slice(extra);
    let out = neron(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).expect("one JSON document on stdout")
}

#[test]
fn banana_at_two_is_finite() {
    let doc = machine("banana.json", &[]);
    assert_eq!(doc["report"]["group_neron_finite"], Value::Bool(true));
    assert_eq!(doc["report"]["phi"], serde_json::json!(["2"]));
    assert_eq!(doc["assumptions"]["small_r_caveat"], Value::Bool(true));
    assert_eq!(doc["assumptions"]["m1_supplied"], Value::Bool(false));
}

#[test]
fn loop_at_three_is_not_finite() {
    let doc = machine("loop.json", &[]);
    assert_eq!(doc["report"]["group_neron_finite"], Value::Bool(false));
    assert_eq!(doc["report"]["m2"], 3);
    assert_eq!(doc["report"]["m3"], 3);
}

#[test]
fn r_override_is_echoed() {
    let doc = machine("loop.json", &["--r", "5"]);
    assert_eq!(doc["input"]["r"], 5);
    assert_eq!(doc["report"]["m2"], 5);
}

#[test]
fn torsor_fixtures() {
    let odd = machine("banana-torsor.json", &[]);
    assert_eq!(odd["report"]["torsor_neron_finite"], Value::Bool(false));
    assert_eq!(odd["assumptions"]["m1_supplied"], Value::Bool(true));
    let even = machine("banana-torsor-even.json", &[]);
    assert_eq!(even["report"]["torsor_neron_finite"], Value::Bool(true));
}

#[test]
fn machine_output_round_trips() {
    for name in ["loop.json", "banana.json", "square.json", "theta-fan.json", "grid.json", "banana-torsor.json"] {
        let path = fixture(name);
        let out = neron(&["analyze", path.to_str().unwrap(), "--format", "machine"]);
        let report = parse_report(&stdout(&out)).unwrap();
        let again = analyze_document(&report.input, None).unwrap();
        assert_eq!(again, report, "{name}");
    }
}

#[test]
fn table_format_is_readable() {
    let path = fixture("square.json");
    let out = neron(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("phi ") && l.ends_with("Z/4")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("group neron finite") && l.ends_with("true")), "{text}");
}

#[test]
fn input_errors_exit_2() {
    let cases = [
        ("malformed-edge.json", "edges[1].tip"),
        ("syntax-error.json", "line 6"),
        ("disconnected.json", "disconnected"),
        ("not-semistable.json", "m1"),
        ("does-not-exist.json", "cannot read"),
    ];
    for (name, needle) in cases {
        let path = fixture(name);
        let out = neron(&["analyze", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty(), "{name}");
        assert!(stderr(&out).contains(needle), "{name}: {}", stderr(&out));
    }
}

#[test]
fn table_matches_golden_and_is_deterministic() {
    for (r, golden) in [("4", include_str!("golden/table-r4.txt")), ("8", include_str!("golden/table-r8.txt"))] {
        let a = neron(&["table", "--r", r]);
        let b = neron(&["table", "--r", r]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(stdout(&a), golden);
    }
    assert_eq!(stdout(&neron(&["table"])), include_str!("golden/table-r4.txt"));
}

#[test]
fn table_rejects_bad_modulus() {
    for r in ["6", "0", "2"] {
        let out = neron(&["table", "--r", r]);
        assert_eq!(out.status.code(), Some(2), "r = {r}");
        assert!(stderr(&out).contains("multiple of 4"));
    }
}

#[test]
fn verify_lemma_small_and_bounds() {
    let out = neron(&["verify-lemma", "--max-edges", "2", "--max-q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("7 graphs"), "{text}");
    assert!(text.trim_end().ends_with("0 counterexamples"), "{text}");

    let out = neron(&["verify-lemma", "--max-edges", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bounds too large"));
}

#[test]
fn verify_lemma_defaults() {
    let out = neron(&["verify-lemma"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("471 graphs, 2826 cases"), "{text}");
}

#[test]
fn version_and_usage() {
    let out = neron(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), format!("neron {}", env!("CARGO_PKG_VERSION")));
    assert_eq!(neron(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(neron(&["analyze"]).status.code(), Some(2));
}
