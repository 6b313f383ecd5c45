use std::collections::BTreeMap;

use coble_core::catalog::{catalog, fibre_chain_params_valid, verify_example};

fn show(name: &str, params: &BTreeMap<String, i64>) {
    let r = verify_example(name, params).unwrap();
    let fails: Vec<_> = r.failures().collect();
    assert!(fails.is_empty(), "{name} {params:?}: {fails:#?}");
}

#[test]
fn every_entry_verifies_with_default_parameters() {
    for e in catalog() {
        show(&e.name, &BTreeMap::new());
    }
}

#[test]
fn hexagon_pencil_for_every_section_count() {
    for m in 1..=6 {
        show("hexagon-pencil", &BTreeMap::from([("m".to_string(), m)]));
    }
}

#[test]
fn fibre_chain_family() {
    for n in 3..=5 {
        for t in 0..=n.min(2) {
            for b in t + 2 * (n - 1)..=t + 2 * n {
                assert!(fibre_chain_params_valid(n, b, t));
                let p = BTreeMap::from([("n".to_string(), n), ("b".to_string(), b), ("t".to_string(), t)]);
                show("fibre-chains-on-fb", &p);
            }
        }
    }
}

#[test]
fn unknown_entry_and_parameter_are_errors() {
    assert!(verify_example("no-such-entry", &BTreeMap::new()).is_err());
    assert!(verify_example("ten-nodal-sextic", &BTreeMap::from([("m".to_string(), 1)])).is_err());
    assert!(verify_example("hexagon-pencil", &BTreeMap::from([("m".to_string(), 7)])).is_err());
}

#[test]
fn entry_names_are_unique_and_claims_have_origins() {
    let mut names: Vec<_> = catalog().iter().map(|e| e.name.clone()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), catalog().len());
    for e in catalog() {
        for c in &e.claims {
            assert!(["worked example", "computed", "definition"].contains(&c.origin.as_str()), "{}", c.id);
        }
    }
}
