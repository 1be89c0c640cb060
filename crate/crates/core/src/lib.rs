//! Nonmonotonic deduction over finite model universes.
//!
//! Three equivalent semantics are provided and cross-checked: choice functions
//! picking preferred worlds ([`choice`]), qualitative measures comparing world
//! sets ([`qmeasure`]), and consequence operators with their postulates
//! ([`consequence`]). Around them sit the propositional layer ([`formula`],
//! [`universe`]), connective rules and maximal consistent sets
//! ([`connectives`]), KLM preferential relations ([`klm`]) and the JSON file
//! formats ([`format`]).

pub mod bits;
pub mod choice;
pub mod connectives;
pub mod consequence;
pub mod format;
pub mod formula;
pub mod klm;
pub mod qmeasure;
pub mod universe;
pub mod verdict;

pub use bits::{SentenceSet, WorldSet};
pub use choice::{ChoiceError, ChoiceFunction, ChoiceProperty, StrictOrder};
pub use formula::{Formula, ParseError};
pub use universe::{Theory, Universe, UniverseError};
pub use verdict::{PropertyVerdict, Witness};
pub use consequence::{Closure, ConsequenceError, ConsequenceOperator, Postulate, TabulatedOperator};
pub use qmeasure::{MeasureError, MeasureProperty, QualMeasure};
pub use connectives::{ConnectiveError, Rule, RuleVerdict};
pub use klm::{KlmAxiom, KlmError, PreferentialRelation};
