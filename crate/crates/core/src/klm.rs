//! Finitary preferential relations `a |~ b` over a propositional universe,
//! the six preferential axioms, extraction from an operator
//! (`a |~ b` iff `b ∈ C({a})`) and the lifting of a relation back to an
//! operator on arbitrary premise sets.
//!
//! A relation is stored over semantic classes: `rel[(S, T)]` says that a
//! formula with models `S` nonmonotonically entails one with models `T`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{all_world_sets, WorldSet};
use crate::choice::{ChoiceError, ChoiceFunction, UnknownName};
use crate::connectives::{validate_classical, ConnectiveError};
use crate::consequence::ConsequenceOperator;
use crate::formula::Formula;
use crate::universe::{Universe, UniverseError};
use crate::verdict::{PropertyVerdict, Witness};

/// Largest atom count for relations.
pub const MAX_KLM_ATOMS: usize = 3;
/// Largest atom count for [`lift`] without the override.
pub const MAX_LIFT_ATOMS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlmError {
    #[error("relations need a full propositional universe")]
    NotFullPropositional,
    #[error("universe has {got} atoms; at most {max} are supported here")]
    TooManyAtoms { got: usize, max: usize },
    #[error("relation fails {}", .0.property)]
    AxiomFailure(PropertyVerdict),
    #[error("lifted conclusions from {0:?} are not the consequences of a single world set")]
    NotPrincipal(WorldSet),
    #[error(transparent)]
    Connective(#[from] ConnectiveError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Choice(#[from] ChoiceError),
}

/// The axioms of preferential entailment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KlmAxiom {
    /// `a |~ a`
    Reflexivity,
    /// `⊨ a ↔ a'` and `a |~ c` give `a' |~ c`
    LeftLogicalEquivalence,
    /// `⊨ a → b` and `c |~ a` give `c |~ b`
    RightWeakening,
    /// `a |~ b` and `a |~ c` give `a |~ b ∧ c`
    AndRule,
    /// `a |~ c` and `b |~ c` give `a ∨ b |~ c`
    OrRule,
    /// `a |~ b` and `a |~ c` give `a ∧ b |~ c`
    CautiousMonotonicity,
}

impl KlmAxiom {
    pub const ALL: [KlmAxiom; 6] = [
        KlmAxiom::Reflexivity,
        KlmAxiom::LeftLogicalEquivalence,
        KlmAxiom::RightWeakening,
        KlmAxiom::AndRule,
        KlmAxiom::OrRule,
        KlmAxiom::CautiousMonotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KlmAxiom::Reflexivity => "reflexivity",
            KlmAxiom::LeftLogicalEquivalence => "left_logical_equivalence",
            KlmAxiom::RightWeakening => "right_weakening",
            KlmAxiom::AndRule => "and_rule",
            KlmAxiom::OrRule => "or_rule",
            KlmAxiom::CautiousMonotonicity => "cautious_monotonicity",
        }
    }
}

impl fmt::Display for KlmAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KlmAxiom {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        KlmAxiom::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PreferentialRelation {
    universe: Arc<Universe>,
    classes: usize,
    rel: Vec<bool>,
}

impl fmt::Debug for PreferentialRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.pairs()).finish()
    }
}

fn check_universe(u: &Universe) -> Result<(), KlmError> {
    if !u.is_full_propositional() {
        return Err(KlmError::NotFullPropositional);
    }
    let n = u.atoms().map_or(0, |a| a.len());
    if n > MAX_KLM_ATOMS {
        return Err(KlmError::TooManyAtoms {
            got: n,
            max: MAX_KLM_ATOMS,
        });
    }
    Ok(())
}

impl PreferentialRelation {
    pub fn from_fn<F>(universe: &Arc<Universe>, mut holds: F) -> Result<PreferentialRelation, KlmError>
    where
        F: FnMut(WorldSet, WorldSet) -> bool,
    {
        check_universe(universe)?;
        let n = universe.len();
        let rel = all_world_sets(n)
            .flat_map(|s| all_world_sets(n).map(move |t| (s, t)))
            .map(|(s, t)| holds(s, t))
            .collect();
        Ok(PreferentialRelation {
            universe: Arc::clone(universe),
            classes: 1 << n,
            rel,
        })
    }

    /// The relation containing exactly the given formula pairs.
    pub fn from_pairs(universe: &Arc<Universe>, pairs: &[(Formula, Formula)]) -> Result<PreferentialRelation, KlmError> {
        check_universe(universe)?;
        let classes = pairs
            .iter()
            .map(|(a, b)| Ok((universe.mod_sentence(a)?, universe.mod_sentence(b)?)))
            .collect::<Result<Vec<_>, UniverseError>>()?;
        PreferentialRelation::from_fn(universe, |s, t| classes.contains(&(s, t)))
    }

    /// Classical entailment: `Mod(a) ⊆ Mod(b)`.
    pub fn classical(universe: &Arc<Universe>) -> Result<PreferentialRelation, KlmError> {
        PreferentialRelation::from_fn(universe, |s, t| s.is_subset(t))
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn holds(&self, s: WorldSet, t: WorldSet) -> bool {
        self.rel[self.pair(s, t)]
    }

    /// `a |~ b` for formulas.
    pub fn entails(&self, a: &Formula, b: &Formula) -> Result<bool, KlmError> {
        Ok(self.holds(self.universe.mod_sentence(a)?, self.universe.mod_sentence(b)?))
    }

    /// Every related pair of classes.
    pub fn pairs(&self) -> impl Iterator<Item = (WorldSet, WorldSet)> + '_ {
        let n = self.universe.len();
        all_world_sets(n)
            .flat_map(move |s| all_world_sets(n).map(move |t| (s, t)))
            .filter(|&(s, t)| self.holds(s, t))
    }

    /// Related pairs as representative formulas.
    pub fn formula_pairs(&self) -> Vec<(Formula, Formula)> {
        self.pairs()
            .map(|(s, t)| {
                (
                    self.universe.representative(s).expect("propositional"),
                    self.universe.representative(t).expect("propositional"),
                )
            })
            .collect()
    }

    pub fn check(&self, axiom: KlmAxiom) -> PropertyVerdict {
        let u = &self.universe;
        let n = u.len();
        let reps: Vec<Formula> = all_world_sets(n)
            .map(|x| u.representative(x).expect("propositional"))
            .collect();
        let m = |f: Formula| u.mod_sentence(&f).expect("formula over the atoms");
        let rep = |s: WorldSet| reps[s.index()].clone();
        let sets = || all_world_sets(n);
        let found = match axiom {
            KlmAxiom::Reflexivity => sets()
                .find(|&s| !self.holds(s, s))
                .map(|s| Witness::sets(&[("a", s)])),
            // a' ranges over a second formula per class, ¬¬a, so the check
            // goes through the satisfaction relation rather than class identity
            KlmAxiom::LeftLogicalEquivalence => sets().find_map(|s| {
                let s2 = m(Formula::not(Formula::not(rep(s))));
                let equivalent = m(Formula::and(
                    Formula::implies(rep(s), rep(s2)),
                    Formula::implies(rep(s2), rep(s)),
                )) == u.all();
                sets()
                    .find(|&c| equivalent && self.holds(s, c) && !self.holds(s2, c))
                    .map(|c| Witness::sets(&[("a", s), ("a'", s2), ("c", c)]))
            }),
            KlmAxiom::RightWeakening => {
                let imp = self.compound(&reps, Formula::implies);
                self.triple(|c, a, b| {
                    self.holds(c, a) && imp[self.pair(a, b)] == u.all() && !self.holds(c, b)
                })
                .map(|w| {
                    let get = |k| w.get(k).expect("triple");
                    Witness::sets(&[("c", get("a")), ("a", get("b")), ("b", get("c"))])
                })
            }
            KlmAxiom::AndRule => {
                let and = self.compound(&reps, Formula::and);
                self.triple(|a, b, c| {
                    self.holds(a, b) && self.holds(a, c) && !self.holds(a, and[self.pair(b, c)])
                })
            }
            KlmAxiom::OrRule => {
                let or = self.compound(&reps, Formula::or);
                self.triple(|a, b, c| {
                    self.holds(a, c) && self.holds(b, c) && !self.holds(or[self.pair(a, b)], c)
                })
            }
            KlmAxiom::CautiousMonotonicity => {
                let and = self.compound(&reps, Formula::and);
                self.triple(|a, b, c| {
                    self.holds(a, b) && self.holds(a, c) && !self.holds(and[self.pair(a, b)], c)
                })
            }
        };
        PropertyVerdict {
            property: axiom.name(),
            holds: found.is_none(),
            witness: found,
        }
    }

    fn pair(&self, a: WorldSet, b: WorldSet) -> usize {
        a.index() * self.classes + b.index()
    }

    /// Model sets of `op(rep(a), rep(b))` for every pair of classes.
    fn compound(&self, reps: &[Formula], op: fn(Formula, Formula) -> Formula) -> Vec<WorldSet> {
        reps.iter()
            .flat_map(|a| reps.iter().map(move |b| (a, b)))
            .map(|(a, b)| {
                self.universe
                    .mod_sentence(&op(a.clone(), b.clone()))
                    .expect("formula over the atoms")
            })
            .collect()
    }

    fn triple<F: Fn(WorldSet, WorldSet, WorldSet) -> bool>(&self, fails: F) -> Option<Witness> {
        let n = self.universe.len();
        all_world_sets(n).find_map(|a| {
            all_world_sets(n).find_map(|b| {
                all_world_sets(n)
                    .find(|&c| fails(a, b, c))
                    .map(|c| Witness::sets(&[("a", a), ("b", b), ("c", c)]))
            })
        })
    }

    pub fn satisfies(&self, axiom: KlmAxiom) -> bool {
        self.check(axiom).holds
    }

    pub fn is_preferential(&self) -> bool {
        KlmAxiom::ALL.into_iter().all(|a| self.satisfies(a))
    }
}

/// `a |~ b` iff `b ∈ C({a})`, for an operator meeting the hypotheses of
/// the classical representation (five postulates, Weak Compactness, rules).
pub fn relation_from_operator(op: &ConsequenceOperator) -> Result<PreferentialRelation, KlmError> {
    validate_classical(op)?;
    let f = op.choice().expect("validated operators are semantic");
    PreferentialRelation::from_fn(f.universe(), |s, t| f.at(s).is_subset(t))
}

/// The operator with `b ∈ C(A)` iff some `a` with `A ⊨ a` has `a' |~ b`
/// for every `a'` with `A ⊨ a'` and `a' ⊨ a`.
///
/// Over classes, `a` and `a'` range over `S ⊇ Mod(A)` and
/// `Mod(A) ⊆ S' ⊆ S`. The accepted conclusions from each `Mod(A)` must be
/// the consequences of one world set, which becomes the choice.
/// Universes above [`MAX_LIFT_ATOMS`] atoms need `allow_large`.
pub fn lift(rel: &PreferentialRelation, allow_large: bool) -> Result<ConsequenceOperator, KlmError> {
    let u = rel.universe();
    let n_atoms = u.atoms().map_or(0, |a| a.len());
    if n_atoms > MAX_LIFT_ATOMS && !allow_large {
        return Err(KlmError::TooManyAtoms {
            got: n_atoms,
            max: MAX_LIFT_ATOMS,
        });
    }
    for axiom in KlmAxiom::ALL {
        let v = rel.check(axiom);
        if !v.holds {
            return Err(KlmError::AxiomFailure(v));
        }
    }
    let all = u.all();
    let mut table = Vec::with_capacity(1 << u.len());
    for x in all_world_sets(u.len()) {
        let supersets: Vec<WorldSet> = x.supersets_within(all).collect();
        let accepted: Vec<WorldSet> = all_world_sets(u.len())
            .filter(|&t| {
                supersets.iter().any(|&s| {
                    supersets
                        .iter()
                        .filter(|&&s2| s2.is_subset(s))
                        .all(|&s2| rel.holds(s2, t))
                })
            })
            .collect();
        let chosen = accepted.iter().fold(all, |acc, &t| acc.intersection(t));
        let principal = all_world_sets(u.len()).all(|t| accepted.contains(&t) == chosen.is_subset(t));
        if !principal {
            return Err(KlmError::NotPrincipal(x));
        }
        table.push((x, chosen));
    }
    let f = ChoiceFunction::from_fn(u, |x| table[x.index()].1)?;
    Ok(ConsequenceOperator::Semantic(f))
}
