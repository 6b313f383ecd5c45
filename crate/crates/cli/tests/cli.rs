use std::path::PathBuf;
use std::process::{Command, Output};

use coble_core::catalog::{verify_example, VerificationReport};
use coble_core::classify::{match_rational_case, RationalTypeInput};
use coble_core::cremona::{noether_reduce, MultiplicityVector};
use serde_json::Value;

fn coble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coble")).args(args).output().expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn genus_of_ten_nodal_sextic_is_zero() {
    let o = coble(&["genus", "(6;2,2,2,2,2,2,2,2,2,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("p_a = 0"));
    let v = json(&coble(&["--json", "genus", "(6; 2^10)"]));
    assert_eq!(v["genus"], 0);
}

#[test]
fn reduce_trace_ends_in_low_degree() {
    let o = coble(&["reduce", "(6;3,3,2,2,2,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("(degree 2)"), "{}", stdout(&o));
}

#[test]
fn reduce_json_round_trips() {
    let v = json(&coble(&["reduce", "(5;3,2,2,2)", "--json"]));
    let input: MultiplicityVector = v["vector"].as_str().unwrap().parse().unwrap();
    let again = noether_reduce(&input, v["force"].as_bool().unwrap()).unwrap();
    assert_eq!(serde_json::to_value(&again).unwrap(), v["reduction"]);
    assert_eq!(v["reached_degree_3"], true);
}

#[test]
fn reduce_refuses_positive_genus_with_check_failure() {
    assert_eq!(coble(&["reduce", "(4;1,1)"]).status.code(), Some(1));
    assert_eq!(coble(&["reduce", "(6;3,3,3)"]).status.code(), Some(1));
    assert_eq!(coble(&["reduce", "(6;3,3,3)", "--force"]).status.code(), Some(0));
}

#[test]
fn malformed_vector_is_a_usage_error() {
    let o = coble(&["genus", "(6;3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(coble(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn catalog_lists_every_entry() {
    let o = coble(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&coble(&["catalog", "--json"]));
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for e in coble_core::catalog::catalog() {
        assert!(names.contains(&e.name.as_str()));
        assert!(stdout(&o).contains(&e.name));
    }
}

#[test]
fn verify_example_passes_and_json_round_trips() {
    let o = coble(&["--json", "verify-example", "fibre-chains-on-fb", "--param", "n=3", "--param", "b=4", "--param", "t=0"]);
    assert_eq!(o.status.code(), Some(0));
    let report: VerificationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert!(report.passed);
    let k2 = report.claims.iter().find(|c| c.id == "k-squared").unwrap();
    assert_eq!(k2.actual, -2);
    let again = verify_example(&report.name, &report.params).unwrap();
    assert_eq!(again, report);
}

#[test]
fn verify_example_errors() {
    let o = coble(&["verify-example", "no-such-entry"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ten-nodal-sextic"));
    assert_eq!(coble(&["verify-example", "hexagon-pencil", "--param", "m=9"]).status.code(), Some(2));
    assert_eq!(coble(&["verify-example", "hexagon-pencil", "--param", "m"]).status.code(), Some(2));
}

#[test]
fn classify_matches_and_reports_failures() {
    let o = coble(&["classify", "--input", &data("case13.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("matched cases: [13]"));
    let bad = coble(&["classify", "--input", &data("broken_case.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("case 13: fails anticanonical class"));
}

#[test]
fn classify_json_round_trips() {
    let v = json(&coble(&["classify", "--json", "--input", &data("case13.json")]));
    let input: RationalTypeInput = serde_json::from_value(v["input"].clone()).unwrap();
    let again = match_rational_case(&input).unwrap();
    assert_eq!(serde_json::to_value(&again).unwrap(), v["report"]);
}

#[test]
fn check_config_recognizes_fibre_and_flags_triple_points() {
    let o = coble(&["check-config", &data("i0star.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fibre: I0*"));
    let v = json(&coble(&["check-config", "--json", &data("i0star.json")]));
    assert_eq!(v["pa"], serde_json::json!({"kind": "determined", "value": 1}));
    assert_eq!(v["self_intersection"], 0);
    assert_eq!(coble(&["check-config", &data("triple_point.json")]).status.code(), Some(1));
    let sub = json(&coble(&["check-config", "--json", "--divisor", "A1=1,A2=1", &data("i0star.json")]));
    assert_eq!(sub["divisor"], serde_json::json!({"A1": 1, "A2": 1}));
    assert_eq!(coble(&["check-config", "missing.json"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts_classes() {
    let v = json(&coble(&["enumerate", "--points", "9", "--selfint", "-1", "--cap", "1", "--json"]));
    assert_eq!(v["count"], 45);
    let o = coble(&["enumerate", "--base", "F3", "--points", "3", "--selfint", "-3", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("s0"));
    assert_eq!(coble(&["enumerate", "--base", "Q7", "--points", "1", "--cap", "1"]).status.code(), Some(2));
}
