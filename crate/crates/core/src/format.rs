//! JSON file formats for universes, choice functions, measures, tabulated
//! operators and preferential relations.
//!
//! Files other than universes carry an optional `"universe"` field, either
//! an inline universe object or a path to a universe file. A [`Loader`]
//! resolves it: a universe supplied by the caller wins, paths are read
//! relative to the loader's base directory, and a loader without one
//! refuses paths.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bits::WorldSet;
use crate::choice::{ChoiceError, ChoiceFunction};
use crate::consequence::{ConsequenceError, TabulatedOperator};
use crate::formula::{Formula, ParseError};
use crate::klm::{KlmError, PreferentialRelation};
use crate::qmeasure::{MeasureError, QualMeasure};
use crate::universe::{Universe, UniverseError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("no universe given")]
    MissingUniverse,
    #[error("{0}")]
    Shape(&'static str),
    #[error("universe path `{0}` cannot be resolved here")]
    PathNotAllowed(String),
    #[error("formula `{text}`: {source}")]
    Formula { text: String, source: ParseError },
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Choice(#[from] ChoiceError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Consequence(#[from] ConsequenceError),
    #[error(transparent)]
    Klm(#[from] KlmError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase", deny_unknown_fields)]
pub enum UniverseSpec {
    Propositional { atoms: Vec<String> },
    Abstract { sentences: Vec<String>, worlds: Vec<WorldSpec> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldSpec {
    pub name: String,
    pub satisfies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UniverseRef {
    Path(String),
    Inline(UniverseSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChoiceFile {
    universe: Option<UniverseRef>,
    table: Option<Vec<ChoiceRow>>,
    rank: Option<Vec<RankEntry>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RankEntry {
    world: String,
    grade: u32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChoiceRow {
    set: Vec<String>,
    chosen: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureFile {
    universe: Option<UniverseRef>,
    pairs: Vec<MeasurePair>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasurePair {
    greater: Vec<String>,
    than: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorFile {
    language: Vec<String>,
    table: Vec<OperatorRow>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorRow {
    #[serde(rename = "A")]
    a: Vec<String>,
    #[serde(rename = "C")]
    c: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    universe: Option<UniverseRef>,
    pairs: Vec<RelationPair>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationPair {
    lhs: String,
    rhs: String,
}

pub fn universe_from_spec(spec: &UniverseSpec) -> Result<Universe, FormatError> {
    Ok(match spec {
        UniverseSpec::Propositional { atoms } => Universe::propositional(atoms)?,
        UniverseSpec::Abstract { sentences, worlds } => {
            let worlds: Vec<(&str, Vec<&str>)> = worlds
                .iter()
                .map(|w| (w.name.as_str(), w.satisfies.iter().map(String::as_str).collect()))
                .collect();
            let sentences: Vec<&str> = sentences.iter().map(String::as_str).collect();
            Universe::abstract_universe(&sentences, &worlds)?
        }
    })
}

pub fn universe_from_json(text: &str) -> Result<Universe, FormatError> {
    universe_from_spec(&serde_json::from_str(text)?)
}

pub fn operator_from_json(text: &str) -> Result<TabulatedOperator, FormatError> {
    let file: OperatorFile = serde_json::from_str(text)?;
    let rows: Vec<(Vec<String>, Vec<String>)> = file.table.into_iter().map(|r| (r.a, r.c)).collect();
    Ok(TabulatedOperator::from_rows(&file.language, &rows)?)
}

pub fn parse_formula(text: &str) -> Result<Formula, FormatError> {
    Formula::parse(text).map_err(|source| FormatError::Formula {
        text: text.to_owned(),
        source,
    })
}

/// Resolves the universe of choice, measure and relation files.
#[derive(Debug, Clone, Default)]
pub struct Loader {
    base_dir: Option<PathBuf>,
    universe: Option<Arc<Universe>>,
}

impl Loader {
    /// No file access and no given universe: only inline universes load.
    pub fn detached() -> Loader {
        Loader::default()
    }

    /// Resolves universe paths relative to `dir`.
    pub fn in_dir(dir: impl Into<PathBuf>) -> Loader {
        Loader {
            base_dir: Some(dir.into()),
            universe: None,
        }
    }

    /// Uses `universe` regardless of what files say.
    pub fn with_universe(mut self, universe: Arc<Universe>) -> Loader {
        self.universe = Some(universe);
        self
    }

    pub fn resolve(&self, r: Option<&UniverseRef>) -> Result<Arc<Universe>, FormatError> {
        if let Some(u) = &self.universe {
            return Ok(Arc::clone(u));
        }
        match r {
            None => Err(FormatError::MissingUniverse),
            Some(UniverseRef::Inline(spec)) => Ok(Arc::new(universe_from_spec(spec)?)),
            Some(UniverseRef::Path(p)) => {
                let dir = self
                    .base_dir
                    .as_ref()
                    .ok_or_else(|| FormatError::PathNotAllowed(p.clone()))?;
                let path = dir.join(p);
                Ok(Arc::new(universe_from_json(&read(&path)?)?))
            }
        }
    }

    pub fn choice_from_json(&self, text: &str) -> Result<ChoiceFunction, FormatError> {
        let file: ChoiceFile = serde_json::from_str(text)?;
        let u = self.resolve(file.universe.as_ref())?;
        match (&file.table, &file.rank) {
            (Some(table), None) => {
                let entries = table
                    .iter()
                    .map(|row| Ok((u.world_set_from_names(&row.set)?, u.world_set_from_names(&row.chosen)?)))
                    .collect::<Result<Vec<_>, UniverseError>>()?;
                Ok(ChoiceFunction::from_entries(&u, entries)?)
            }
            (None, Some(rank)) => {
                let mut grades: Vec<Option<u32>> = vec![None; u.len()];
                for e in rank {
                    let w = u.parse_world(&e.world)?;
                    if grades[w].replace(e.grade).is_some() {
                        return Err(FormatError::Shape("a world is graded twice"));
                    }
                }
                let grades: Vec<u32> = grades
                    .into_iter()
                    .collect::<Option<_>>()
                    .ok_or(FormatError::Shape("every world needs a grade"))?;
                Ok(ChoiceFunction::from_rank(&u, &grades)?)
            }
            _ => Err(FormatError::Shape("a choice file has exactly one of `table` and `rank`")),
        }
    }

    pub fn measure_from_json(&self, text: &str) -> Result<QualMeasure, FormatError> {
        let file: MeasureFile = serde_json::from_str(text)?;
        let u = self.resolve(file.universe.as_ref())?;
        let pairs = file
            .pairs
            .iter()
            .map(|p| Ok((u.world_set_from_names(&p.greater)?, u.world_set_from_names(&p.than)?)))
            .collect::<Result<Vec<_>, UniverseError>>()?;
        Ok(QualMeasure::from_pairs(&u, &pairs)?)
    }

    pub fn relation_from_json(&self, text: &str) -> Result<PreferentialRelation, FormatError> {
        let file: RelationFile = serde_json::from_str(text)?;
        let u = self.resolve(file.universe.as_ref())?;
        let pairs = file
            .pairs
            .iter()
            .map(|p| Ok((parse_formula(&p.lhs)?, parse_formula(&p.rhs)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(PreferentialRelation::from_pairs(&u, &pairs)?)
    }
}

/// Reads a file, mapping failures to [`FormatError::Io`].
pub fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn universe_to_spec(u: &Universe) -> UniverseSpec {
    match (u.atoms(), u.sentences()) {
        (Some(atoms), _) => UniverseSpec::Propositional {
            atoms: atoms.to_vec(),
        },
        (None, Some(sentences)) => UniverseSpec::Abstract {
            sentences: sentences.to_vec(),
            worlds: (0..u.len())
                .map(|w| WorldSpec {
                    name: u.world_name(w).to_owned(),
                    satisfies: u.sentence_names(u.satisfied_by(w).expect("abstract")),
                })
                .collect(),
        },
        (None, None) => unreachable!("a universe is propositional or abstract"),
    }
}

pub fn universe_to_value(u: &Universe) -> Value {
    serde_json::to_value(universe_to_spec(u)).expect("serializable")
}

fn names(u: &Universe, x: WorldSet) -> Value {
    json!(u.world_set_names(x))
}

/// Choice-function file with the universe inline.
pub fn choice_to_value(f: &ChoiceFunction) -> Value {
    let u = f.universe();
    json!({
        "universe": universe_to_value(u),
        "table": f.entries().map(|(x, y)| json!({"set": names(u, x), "chosen": names(u, y)})).collect::<Vec<_>>(),
    })
}

/// Measure file with the universe inline.
pub fn measure_to_value(m: &QualMeasure) -> Value {
    let u = m.universe();
    json!({
        "universe": universe_to_value(u),
        "pairs": m.pairs().map(|(x, y)| json!({"greater": names(u, x), "than": names(u, y)})).collect::<Vec<_>>(),
    })
}

pub fn operator_to_value(t: &TabulatedOperator) -> Value {
    json!({
        "language": t.language(),
        "table": t.table().iter().enumerate().map(|(i, &c)| {
            json!({"A": t.names(crate::bits::SentenceSet(i as u64)), "C": t.names(c)})
        }).collect::<Vec<_>>(),
    })
}

/// Relation file with representative formulas and the universe inline.
pub fn relation_to_value(r: &PreferentialRelation) -> Value {
    json!({
        "universe": universe_to_value(r.universe()),
        "pairs": r.formula_pairs().iter().map(|(a, b)| json!({"lhs": a.render(), "rhs": b.render()})).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const U1: &str = r#"{"mode":"abstract","sentences":["a"],"worlds":[{"name":"w1","satisfies":["a"]}]}"#;

    #[test]
    fn universe_round_trip() {
        let u = universe_from_json(U1).unwrap();
        assert_eq!(universe_from_spec(&universe_to_spec(&u)).unwrap(), u);
        let p = universe_from_json(r#"{"mode":"propositional","atoms":["p","q"]}"#).unwrap();
        assert_eq!(p.len(), 4);
        assert!(universe_from_json(r#"{"mode":"modal"}"#).is_err());
    }

    #[test]
    fn choice_with_inline_universe() {
        let text = format!(r#"{{"universe":{U1},"table":[{{"set":["w1"],"chosen":["w1"]}}]}}"#);
        let f = Loader::detached().choice_from_json(&text).unwrap();
        assert!(f.is_cclm());
        let again = Loader::detached()
            .choice_from_json(&choice_to_value(&f).to_string())
            .unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn paths_need_a_directory() {
        let text = r#"{"universe":"u.json","table":[]}"#;
        assert!(matches!(
            Loader::detached().choice_from_json(text),
            Err(FormatError::PathNotAllowed(_))
        ));
        assert!(matches!(
            Loader::detached().choice_from_json(r#"{"table":[]}"#),
            Err(FormatError::MissingUniverse)
        ));
    }

    #[test]
    fn ranked_choice_files() {
        let u = Arc::new(universe_from_json(r#"{"mode":"propositional","atoms":["b","f"]}"#).unwrap());
        let loader = Loader::detached().with_universe(Arc::clone(&u));
        let text = r#"{"rank":[{"world":"b=1,f=1","grade":0},{"world":"b=0,f=1","grade":1},
            {"world":"b=0,f=0","grade":1},{"world":"b=1,f=0","grade":2}]}"#;
        let f = loader.choice_from_json(text).unwrap();
        assert_eq!(f, ChoiceFunction::from_rank(&u, &[1, 1, 2, 0]).unwrap());
        let short = r#"{"rank":[{"world":"b=1,f=1","grade":0}]}"#;
        assert!(matches!(loader.choice_from_json(short), Err(FormatError::Shape(_))));
        assert!(matches!(
            loader.choice_from_json(r#"{"rank":[],"table":[]}"#),
            Err(FormatError::Shape(_))
        ));
    }

    #[test]
    fn operator_round_trip() {
        let text = r#"{"language":["a","b"],"table":[
            {"A":[],"C":["a"]},{"A":["a"],"C":["a"]},{"A":["b"],"C":["b"]},{"A":["a","b"],"C":["a","b"]}]}"#;
        let t = operator_from_json(text).unwrap();
        assert_eq!(operator_from_json(&operator_to_value(&t).to_string()).unwrap(), t);
    }

    #[test]
    fn relation_normalizes_to_classes() {
        let text = r#"{"universe":{"mode":"propositional","atoms":["b","f"]},"pairs":[{"lhs":"b","rhs":"f"}]}"#;
        let r = Loader::detached().relation_from_json(text).unwrap();
        assert!(r.entails(&Formula::parse("~~b").unwrap(), &Formula::parse("f | f").unwrap()).unwrap());
        assert!(matches!(
            Loader::detached().relation_from_json(&text.replace("\"f\"}", "\"f &\"}")),
            Err(FormatError::Formula { .. })
        ));
    }
}
