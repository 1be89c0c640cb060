//! The JSON report printed by every verb.

use std::collections::BTreeMap;

use choice_logic::{PropertyVerdict, Universe, Witness};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub verb: &'static str,
    pub inputs: BTreeMap<&'static str, Value>,
    pub results: Vec<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entails: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub property: String,
    pub holds: bool,
    pub witness: Option<Value>,
}

impl Report {
    pub fn new(verb: &'static str) -> Report {
        Report {
            verb,
            inputs: BTreeMap::new(),
            results: Vec::new(),
            entails: None,
            output: None,
        }
    }

    pub fn input(&mut self, name: &'static str, value: impl Into<Value>) {
        self.inputs.insert(name, value.into());
    }

    pub fn push(&mut self, property: impl Into<String>, holds: bool, witness: Option<Value>) {
        self.results.push(Outcome {
            property: property.into(),
            holds,
            witness,
        });
    }

    pub fn all_hold(&self) -> bool {
        self.results.iter().all(|r| r.holds)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Witness sets as world names, keyed by the set names.
pub fn world_witness(u: &Universe, w: &Witness) -> Value {
    let mut m = Map::new();
    for (name, x) in &w.sets {
        m.insert((*name).to_owned(), json!(u.world_set_names(*x)));
    }
    if let Some(world) = w.world {
        m.insert("world".to_owned(), json!(u.world_name(world)));
    }
    Value::Object(m)
}

/// Witness sets as representative formulas, for verdicts over formula classes.
pub fn formula_witness(u: &Universe, w: &Witness) -> Value {
    let mut m = Map::new();
    for (name, x) in &w.sets {
        let rendered = u.representative(*x).map(|f| f.render()).unwrap_or_default();
        m.insert((*name).to_owned(), json!(rendered));
    }
    Value::Object(m)
}

pub fn push_verdict(report: &mut Report, v: &PropertyVerdict, render: impl Fn(&Witness) -> Value) {
    report.push(v.property, v.holds, v.witness.as_ref().map(render));
}
