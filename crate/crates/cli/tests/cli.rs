use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use cuas_cli::{execute, parse_scenario, Options, Query, Report, ScenarioError};
use cuas_core::Scalar;

fn restaurant() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/restaurant.json")
}

fn cuas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuas"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_scenario(args: &[&str]) -> Output {
    let path = restaurant();
    let mut all = vec!["--scenario", path.to_str().unwrap()];
    all.extend_from_slice(args);
    cuas(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenario_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn voi_of_restaurant_is_two() {
    let out = with_scenario(&["voi", "L", "q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "2\n");
}

#[test]
fn constant_structure_has_no_value() {
    assert_eq!(stdout(&with_scenario(&["voi", "L", "q_const"])), "0\n");
}

#[test]
fn compare_prints_witness_and_certificate() {
    let out = with_scenario(&["compare", "M", "L"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("values more: yes"));
    assert!(text.contains("witness: [(0,0),(1,-3)] + R_-"));
    assert!(text.contains("star-difference reconstruction"));
}

#[test]
fn negative_verdict_exits_one() {
    let out = with_scenario(&["compare", "L", "M"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("values more: no"));
}

#[test]
fn normal_fan_breakpoints() {
    let text = stdout(&with_scenario(&["normalfan", "L"]));
    assert!(text.starts_with("breakpoints: 1/5, 4/7\n"));
    assert!(text.contains("(4,-1): t in [1/5,4/7]"));
}

#[test]
fn set_operations_print_canonical_generators() {
    let expected = "[(0,0),(4,-1),(7,-5),(8,-8)] + R_-\n";
    assert_eq!(stdout(&with_scenario(&["union", "L", "E"])), expected);
    assert_eq!(stdout(&with_scenario(&["fuse", "L", "T"])), expected);
    assert_eq!(stdout(&with_scenario(&["stardiff", "M", "L"])), "[(0,0),(1,-3)] + R_-\n");
}

#[test]
fn little_flexibility_accepts_names_and_literals() {
    let named = stdout(&with_scenario(&["flex-little", "L", "A"]));
    let literal = stdout(&with_scenario(&["flex-little", "L", "(5,-1)"]));
    assert_eq!(named, literal);
    assert!(named.contains("qualifying generators: none"));
    let witness = stdout(&with_scenario(&["flex-little", "L", "E", "(7,-5)"]));
    assert!(witness.contains("witness for (7,-5): [(0,0),(1,-3)] + R_-"));
    let out = with_scenario(&["flex-little", "L", "A", "(4,-1)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn without_subcommand_runs_scenario_queries() {
    let out = with_scenario(&[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("> voi L q\n2\n"));
    assert_eq!(text.matches("\n> ").count() + 1, 11);
}

#[test]
fn output_is_deterministic() {
    let a = with_scenario(&["--json"]);
    let b = with_scenario(&["--json"]);
    assert_eq!(a.stdout, b.stdout);
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(value[0]["result"]["value"]["exact"], "2");
}

#[test]
fn dioid_laws_on_scenario() {
    let text = stdout(&with_scenario(&["check-dioid"]));
    assert!(text.contains("all laws hold"));
    let text = stdout(&with_scenario(&["check-dioid", "L", "T", "E"]));
    assert!(text.starts_with("9 law checks over 1 triples"));
}

#[test]
fn numeric_mode_matches_exact() {
    let out = with_scenario(&["voi", "M", "q", "--mode", "numeric"]);
    let value: f64 = stdout(&out).trim().parse().unwrap();
    assert!((value - 2.5).abs() < 1e-9);
}

#[test]
fn errors_exit_two() {
    assert_eq!(with_scenario(&["voi", "L", "missing"]).status.code(), Some(2));
    assert_eq!(cuas(&["voi", "L", "q"]).status.code(), Some(2));
    let broken = scenario_file(r#"{"states": 2, "decision_makers": {"L": [[0, 0]}"#);
    let out = cuas(&["--scenario", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_scenario("{\n  \"states\": 2,\n  \"bogus\": 1\n}").unwrap_err();
    match err {
        ScenarioError::Parse { line, .. } => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

#[test]
fn weights_must_sum_to_one() {
    let err = parse_scenario(
        r#"{"states": 2, "info_structures": {"q": [
            {"weight": "9/20", "posterior": [1, 0]},
            {"weight": "9/20", "posterior": [0, 1]}]}}"#,
    )
    .unwrap_err();
    assert!(matches!(err, ScenarioError::Validation { ref field, .. } if field == "info_structures.q"));
}

#[test]
fn wrong_arity_names_the_decision_maker() {
    let err = parse_scenario(r#"{"states": 2, "decision_makers": {"D": [[1, 2], [3]]}}"#).unwrap_err();
    match err {
        ScenarioError::Validation { field, message } => {
            assert_eq!(field, "decision_makers.D[1]");
            assert!(message.contains("expected 2"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn undefined_query_names_are_rejected() {
    let err = parse_scenario(r#"{"states": 2, "queries": [["voi", "L", "q"]]}"#).unwrap_err();
    assert!(matches!(err, ScenarioError::Validation { ref field, .. } if field == "queries[0]"));
    let err = parse_scenario(r#"{"states": 2, "queries": [["frobnicate"]]}"#).unwrap_err();
    assert!(err.to_string().contains("unknown command"));
}

#[test]
fn library_and_binary_agree() {
    let text = std::fs::read_to_string(restaurant()).unwrap();
    let scenario = parse_scenario(&text).unwrap();
    let query = Query::from_words(&["voi".into(), "M".into(), "q".into()]).unwrap();
    let report = execute(&scenario, &query, &Options::default()).unwrap();
    match &report {
        Report::Value(Scalar::Exact(v)) => assert_eq!(v.to_string(), "5/2"),
        other => panic!("{other:?}"),
    }
    assert_eq!(stdout(&with_scenario(&["voi", "M", "q"])), format!("{}\n", report.text()));
}
