mod common;

use coble_core::classify::{match_rational_case, RationalTypeInput};
use common::{golden, perturbed, SCROLL_CASES, SCROLL_CONSTRAINTS};

#[test]
fn golden_instances_match_exactly_their_case() {
    for case in 1..=16 {
        let r = match_rational_case(&golden(case)).unwrap();
        let log = r.case(case).unwrap();
        let fails: Vec<_> = log.failures().collect();
        assert!(fails.is_empty(), "case {case}: {fails:?}");
        assert_eq!(r.matched_cases, vec![case], "case {case}");
    }
}

#[test]
fn perturbed_instances_fail_with_named_constraint() {
    for case in 1..=16 {
        let (inp, name) = perturbed(case);
        let r = match_rational_case(&inp).unwrap();
        assert!(r.matched_cases.is_empty(), "case {case} perturbation matched {:?}", r.matched_cases);
        let log = r.case(case).unwrap();
        assert!(log.failures().any(|f| f.name == name), "case {case}: {:?}", log.failures().collect::<Vec<_>>());
    }
}

#[test]
fn scroll_cases_log_balance_constraints() {
    for case in SCROLL_CASES {
        let r = match_rational_case(&golden(case)).unwrap();
        let log = r.case(case).unwrap();
        for name in SCROLL_CONSTRAINTS {
            assert!(log.constraints.iter().any(|c| c.name == name && c.pass), "case {case} {name}");
        }
    }
}

#[test]
fn matched_implies_all_logged_constraints_pass() {
    for case in 1..=16 {
        for inp in [golden(case), perturbed(case).0] {
            let r = match_rational_case(&inp).unwrap();
            for log in &r.cases {
                assert_eq!(log.matched, log.failures().next().is_none());
            }
        }
    }
}

#[test]
fn input_round_trips_through_json() {
    for case in 1..=16 {
        let inp = golden(case);
        let text = serde_json::to_string(&inp).unwrap();
        let back: RationalTypeInput = serde_json::from_str(&text).unwrap();
        assert_eq!(back, inp);
        let report = match_rational_case(&back).unwrap();
        let rt: coble_core::classify::RationalCaseReport =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        assert_eq!(rt, report);
    }
}

#[test]
fn json_input_with_coefficient_vectors() {
    let text = r#"{"y_min":{"Fb":3},"k":2,"m":0,"components":[
        {"label":"M1","role":"M1","coef":2,"class":[1,0]},
        {"label":"G1","role":"G","coef":4,"class":[0,1]},
        {"label":"H1","role":"H","coef":8,"class":"f"}]}"#;
    let inp: RationalTypeInput = serde_json::from_str(text).unwrap();
    assert_eq!(match_rational_case(&inp).unwrap().matched_cases, vec![13]);
}
