//! Counterexample searches over choice functions.

use std::sync::Arc;

use anyhow::Result;
use choice_logic::choice::{enumerate_cclm, enumerate_ranked, sample_cclm};
use choice_logic::format::choice_to_value;
use choice_logic::qmeasure::measure_from_choice;
use choice_logic::{ChoiceFunction, ChoiceProperty, MeasureProperty, Universe};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{world_witness, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SearchKind {
    /// A CCLM function failing Expansion.
    ExpansionFailure,
    /// A CCLM function whose measure is not modular.
    NonModularMeasure,
    /// A CCLM function failing the Arrow condition.
    ArrowFailure,
}

impl SearchKind {
    pub fn name(self) -> &'static str {
        match self {
            SearchKind::ExpansionFailure => "expansion_failure",
            SearchKind::NonModularMeasure => "non_modular_measure",
            SearchKind::ArrowFailure => "arrow_failure",
        }
    }

    /// The violation exhibited by `f`, if any.
    fn violation(self, f: &ChoiceFunction) -> Option<Value> {
        let u = f.universe();
        let v = match self {
            SearchKind::ExpansionFailure => f.check(ChoiceProperty::Expansion),
            SearchKind::ArrowFailure => f.check(ChoiceProperty::Arrow),
            SearchKind::NonModularMeasure => measure_from_choice(f).ok()?.check(MeasureProperty::Modularity),
        };
        v.witness.map(|w| world_witness(u, &w))
    }
}

/// Random grades in `0..n`.
fn sample_ranked(u: &Arc<Universe>, rng: &mut ChaCha8Rng) -> ChoiceFunction {
    let n = u.len();
    let grades: Vec<u32> = (0..n).map(|_| rng.gen_range(0..n.max(1) as u32)).collect();
    ChoiceFunction::from_rank(u, &grades).expect("one grade per world")
}

/// Reports the first function exhibiting `kind`; the check holds when
/// there is none.
pub fn run(
    report: &mut Report,
    kind: SearchKind,
    u: &Arc<Universe>,
    ranked: bool,
    sampling: Option<(usize, u64)>,
) -> Result<()> {
    let candidates: Box<dyn Iterator<Item = ChoiceFunction>> = match (sampling, ranked) {
        (None, false) => Box::new(enumerate_cclm(u)?),
        (None, true) => Box::new(enumerate_ranked(u)?),
        (Some((k, seed)), ranked) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = Arc::clone(u);
            Box::new((0..k).map(move |_| {
                if ranked {
                    sample_ranked(&u, &mut rng)
                } else {
                    sample_cclm(&u, &mut rng)
                }
            }))
        }
    };
    let mut searched = 0usize;
    let mut found = None;
    for f in candidates {
        searched += 1;
        if let Some(v) = kind.violation(&f) {
            found = Some(json!({"choice": choice_to_value(&f), "violation": v}));
            break;
        }
    }
    let exhaustive = sampling.is_none();
    report.push(kind.name(), found.is_none(), found);
    report.output = Some(json!({"searched": searched, "exhaustive": exhaustive}));
    Ok(())
}
