//! Replays the checked-in fuzz corpus seeds through the same entry points.

use std::path::PathBuf;
use std::sync::Arc;

use choice_logic::format::{operator_from_json, operator_to_value, universe_from_json, universe_to_value, Loader};
use choice_logic::{Formula, Universe};

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(!paths.is_empty(), "{target}");
    paths.iter().map(|p| std::fs::read_to_string(p).unwrap()).collect()
}

fn birds() -> Loader {
    Loader::detached().with_universe(Arc::new(Universe::propositional(&["b", "f"]).unwrap()))
}

#[test]
fn formula_seeds_round_trip() {
    for text in seeds("parse_formula") {
        let f = Formula::parse(&text).unwrap();
        assert_eq!(Formula::parse(&f.render()).unwrap(), f);
    }
}

#[test]
fn json_seeds_load() {
    for text in seeds("universe_json") {
        let u = universe_from_json(&text).unwrap();
        assert_eq!(universe_from_json(&universe_to_value(&u).to_string()).unwrap(), u);
    }
    for text in seeds("operator_json") {
        let t = operator_from_json(&text).unwrap();
        assert_eq!(operator_from_json(&operator_to_value(&t).to_string()).unwrap(), t);
    }
    for text in seeds("choice_json") {
        assert!(Loader::detached().choice_from_json(&text).is_ok() || birds().choice_from_json(&text).is_ok());
    }
    for text in seeds("measure_json") {
        Loader::detached().measure_from_json(&text).unwrap();
    }
    for text in seeds("relation_json") {
        assert!(Loader::detached().relation_from_json(&text).is_ok() || birds().relation_from_json(&text).is_ok());
    }
}
