//! Introduction and elimination rules for the classical connectives,
//! consistency, maximal consistent sets, and the constructions turning a
//! rule-abiding operator back into a propositional semantics.
//!
//! Rules are checked over a semantic operator on a full propositional
//! universe. Premise sets range over closed sets `Th(X)` and the formulas
//! `a`, `b` over one representative per semantic class; the model sets of
//! `¬a`, `a ∧ b`, `a ∨ b` and `a → b` are computed by evaluating the
//! corresponding formulas, not by set algebra.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{all_sentence_sets, all_world_sets, SentenceSet, WorldSet};
use crate::choice::{cclm_extension, ChoiceFunction, UnknownName};
use crate::consequence::{
    represent_on, Closure, ConsequenceError, ConsequenceOperator, Postulate, TabulatedOperator,
};
use crate::formula::Formula;
use crate::universe::Universe;
use crate::verdict::{PropertyVerdict, Witness};

/// Largest atom count for rule checks (`2^(2^n)` classes per quantifier).
pub const MAX_RULE_ATOMS: usize = 3;
/// Largest atom count for the atomic embedding.
pub const MAX_EMBED_ATOMS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectiveError {
    #[error("rule checks need a semantic operator over a full propositional universe")]
    NotFullPropositional,
    #[error("universe has {0} atoms; at most {max} are supported here", max = MAX_RULE_ATOMS)]
    TooManyAtoms(usize),
    #[error("premise set is inconsistent")]
    Inconsistent,
    #[error("operator fails rule {}", .0.rule)]
    RuleFailure(RuleVerdict),
    #[error("operator fails {}", .0.postulate)]
    PostulateFailure(crate::consequence::PostulateVerdict),
    #[error("no Contraction/Coherence/Local Monotonicity extension found")]
    NoExtension,
    #[error(transparent)]
    Consequence(#[from] ConsequenceError),
}

impl From<crate::universe::UniverseError> for ConnectiveError {
    fn from(e: crate::universe::UniverseError) -> Self {
        ConnectiveError::Consequence(e.into())
    }
}

impl From<crate::choice::ChoiceError> for ConnectiveError {
    fn from(e: crate::choice::ChoiceError) -> Self {
        ConnectiveError::Consequence(e.into())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `C(A, a ∧ b) = C(A, a, b)`
    AndBothSides,
    /// `C(A, a, ¬a) = L`
    NegLeftIntro,
    /// `C(A, ¬a) = L ⇒ a ∈ C(A)`
    NegLeftElim,
    /// `C(A, a) ∩ C(A, b) ⊆ C(A, a ∨ b)`
    OrLeftIntro,
    /// `a ∈ C(A) ⇒ a ∨ b ∈ C(A)`, and the same for `b`
    OrRightIntro,
    /// `b ∈ C(A, a) ⇒ a → b ∈ C(A)`
    ImpRightIntro,
    /// `b ∈ C(A, a, a → b)`
    ImpLeftIntro,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::AndBothSides,
        Rule::NegLeftIntro,
        Rule::NegLeftElim,
        Rule::OrLeftIntro,
        Rule::OrRightIntro,
        Rule::ImpRightIntro,
        Rule::ImpLeftIntro,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::AndBothSides => "and_both_sides",
            Rule::NegLeftIntro => "neg_left_intro",
            Rule::NegLeftElim => "neg_left_elim",
            Rule::OrLeftIntro => "or_left_intro",
            Rule::OrRightIntro => "or_right_intro",
            Rule::ImpRightIntro => "imp_right_intro",
            Rule::ImpLeftIntro => "imp_left_intro",
        }
    }

    fn binary(self) -> bool {
        !matches!(self, Rule::NegLeftIntro | Rule::NegLeftElim)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

/// A violated rule instance: premises `Th(premises)`, formulas with model
/// sets `a` and `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleWitness {
    pub premises: WorldSet,
    pub a: WorldSet,
    pub b: Option<WorldSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleVerdict {
    pub rule: &'static str,
    pub holds: bool,
    pub witness: Option<RuleWitness>,
}

/// Representative formulas per class and the model sets of the compound
/// formulas built from them.
struct Classes {
    all: WorldSet,
    not: Vec<WorldSet>,
    and: Vec<WorldSet>,
    or: Vec<WorldSet>,
    imp: Vec<WorldSet>,
    count: usize,
}

impl Classes {
    fn new(u: &Universe) -> Result<Classes, ConnectiveError> {
        let count = 1usize << u.len();
        let reps: Vec<Formula> = all_world_sets(u.len())
            .map(|x| u.representative(x))
            .collect::<Result<_, _>>()?;
        let mut not = Vec::with_capacity(count);
        let mut and = Vec::with_capacity(count * count);
        let mut or = Vec::with_capacity(count * count);
        let mut imp = Vec::with_capacity(count * count);
        for a in &reps {
            not.push(u.mod_sentence(&Formula::not(a.clone()))?);
            for b in &reps {
                and.push(u.mod_sentence(&Formula::and(a.clone(), b.clone()))?);
                or.push(u.mod_sentence(&Formula::or(a.clone(), b.clone()))?);
                imp.push(u.mod_sentence(&Formula::implies(a.clone(), b.clone()))?);
            }
        }
        Ok(Classes {
            all: u.all(),
            not,
            and,
            or,
            imp,
            count,
        })
    }

    fn pair(&self, p: WorldSet, q: WorldSet) -> usize {
        p.index() * self.count + q.index()
    }
}

fn rule_fails(f: &ChoiceFunction, c: &Classes, rule: Rule, x: WorldSet, p: WorldSet, q: WorldSet) -> bool {
    let g = |s: WorldSet| f.at(s);
    // every set is definable, so Th(Y) ⊆ Th(Z) iff Z ⊆ Y and b ∈ Th(Y) iff Y ⊆ Mod(b)
    match rule {
        Rule::AndBothSides => g(x.intersection(c.and[c.pair(p, q)])) != g(x.intersection(p).intersection(q)),
        Rule::NegLeftIntro => !g(x.intersection(p).intersection(c.not[p.index()])).is_empty(),
        Rule::NegLeftElim => g(x.intersection(c.not[p.index()])).is_empty() && !g(x).is_subset(p),
        Rule::OrLeftIntro => {
            !g(x.intersection(c.or[c.pair(p, q)])).is_subset(g(x.intersection(p)).union(g(x.intersection(q))))
        }
        Rule::OrRightIntro => {
            let fx = g(x);
            let or = c.or[c.pair(p, q)];
            (fx.is_subset(p) || fx.is_subset(q)) && !fx.is_subset(or)
        }
        Rule::ImpRightIntro => g(x.intersection(p)).is_subset(q) && !g(x).is_subset(c.imp[c.pair(p, q)]),
        Rule::ImpLeftIntro => !g(x.intersection(p).intersection(c.imp[c.pair(p, q)])).is_subset(q),
    }
}

fn rule_setup(op: &ConsequenceOperator) -> Result<(&ChoiceFunction, Classes), ConnectiveError> {
    let f = match op {
        ConsequenceOperator::Semantic(f) if f.universe().is_full_propositional() => f,
        _ => return Err(ConnectiveError::NotFullPropositional),
    };
    let atoms = f.universe().atoms().map_or(0, |a| a.len());
    if atoms > MAX_RULE_ATOMS {
        return Err(ConnectiveError::TooManyAtoms(atoms));
    }
    let classes = Classes::new(f.universe())?;
    debug_assert_eq!(classes.all, f.universe().all());
    Ok((f, classes))
}

/// Checks one rule over all closed premise sets and formula classes.
pub fn check_rule(op: &ConsequenceOperator, rule: Rule) -> Result<RuleVerdict, ConnectiveError> {
    Ok(check_rules(op, &[rule])?.remove(0))
}

/// Checks several rules, sharing the class tables.
pub fn check_rules(op: &ConsequenceOperator, rules: &[Rule]) -> Result<Vec<RuleVerdict>, ConnectiveError> {
    let (f, c) = rule_setup(op)?;
    Ok(rules.iter().map(|&rule| search_rule(f, &c, rule)).collect())
}

fn search_rule(f: &ChoiceFunction, c: &Classes, rule: Rule) -> RuleVerdict {
    let n = f.universe().len();
    let qs: Vec<WorldSet> = if rule.binary() {
        all_world_sets(n).collect()
    } else {
        vec![WorldSet::EMPTY]
    };
    let found = all_world_sets(n).find_map(|x| {
        all_world_sets(n).find_map(|p| {
            qs.iter()
                .find(|&&q| rule_fails(f, c, rule, x, p, q))
                .map(|&q| RuleWitness {
                    premises: x,
                    a: p,
                    b: rule.binary().then_some(q),
                })
        })
    });
    RuleVerdict {
        rule: rule.name(),
        holds: found.is_none(),
        witness: found,
    }
}

/// Re-evaluates a rule at a witness.
pub fn rule_violated(op: &ConsequenceOperator, rule: Rule, w: &RuleWitness) -> Result<bool, ConnectiveError> {
    let (f, c) = rule_setup(op)?;
    let all = f.universe().all();
    let sets = [Some(w.premises), Some(w.a), w.b.or(Some(WorldSet::EMPTY))];
    if sets.iter().any(|s| !s.is_some_and(|s| s.is_subset(all))) {
        return Ok(false);
    }
    Ok(rule_fails(f, &c, rule, w.premises, w.a, w.b.unwrap_or(WorldSet::EMPTY)))
}

/// The witness with its premise set and formulas rendered.
pub fn render_rule_witness(u: &Universe, w: &RuleWitness) -> Result<(String, String, Option<String>), ConnectiveError> {
    Ok((
        u.representative(w.premises)?.render(),
        u.representative(w.a)?.render(),
        w.b.map(|b| u.representative(b).map(|f| f.render())).transpose()?,
    ))
}

/// `C(A) ≠ L`.
pub fn is_consistent(op: &ConsequenceOperator, premises: &[Formula]) -> Result<bool, ConnectiveError> {
    Ok(!op.close(premises)?.is_everything())
}

/// Every maximal consistent superset of the premises.
///
/// A maximal consistent set `S` of a semantic operator equals `Th(Mod(S))`,
/// so the search runs over the minimal definable `X ⊆ Mod(A)` with
/// `f(X) ≠ ∅`; tabulated operators are searched by brute force.
pub fn maximal_consistent_extensions(
    op: &ConsequenceOperator,
    premises: &[Formula],
) -> Result<Vec<Closure>, ConnectiveError> {
    if !is_consistent(op, premises)? {
        return Err(ConnectiveError::Inconsistent);
    }
    match op {
        ConsequenceOperator::Semantic(f) => {
            let u = f.universe();
            let mods = u.mod_set(premises)?;
            let consistent: Vec<WorldSet> = u
                .definable_sets()
                .into_iter()
                .filter(|&x| x.is_subset(mods) && !f.at(x).is_empty())
                .collect();
            consistent
                .iter()
                .filter(|&&x| !consistent.iter().any(|&y| y != x && y.is_subset(x)))
                .map(|&x| Ok(Closure::Theory(u.theory_of(x)?)))
                .collect()
        }
        ConsequenceOperator::Tabulated(t) => {
            let a = t.sentence_set(premises)?;
            let consistent: Vec<SentenceSet> = all_sentence_sets(t.language().len())
                .filter(|&s| a.is_subset(s) && t.close_set(s) != t.full())
                .collect();
            let language = Arc::new(t.language().to_vec());
            Ok(consistent
                .iter()
                .filter(|&&s| !consistent.iter().any(|&b| b != s && s.is_subset(b)))
                .map(|&s| Closure::Set {
                    language: Arc::clone(&language),
                    set: s,
                })
                .collect())
        }
    }
}

/// Checks that a closed set of a propositional semantic operator is a
/// theory and treats `∧`, `¬`, `∨` and `→` classically.
pub fn check_classical_clauses(op: &ConsequenceOperator, t: &Closure) -> Result<PropertyVerdict, ConnectiveError> {
    let (f, c) = rule_setup(op)?;
    let u = f.universe();
    let Closure::Theory(theory) = t else {
        return Err(ConnectiveError::NotFullPropositional);
    };
    let m = theory.models();
    let is_theory = u.closure(f.at(m)) == m;
    let member = |s: WorldSet| m.is_subset(s);
    let n = u.len();
    let found = if !is_theory {
        Some(Witness::sets(&[("A", m)]))
    } else {
        all_world_sets(n).find_map(|p| {
            all_world_sets(n).find_map(|q| {
                let (a, b) = (member(p), member(q));
                let ok = member(c.and[c.pair(p, q)]) == (a && b)
                    && member(c.not[p.index()]) == !a
                    && member(c.or[c.pair(p, q)]) == (a || b)
                    && !member(c.imp[c.pair(p, q)]) == (a && !b);
                (!ok).then(|| Witness::sets(&[("A", m), ("a", p), ("b", q)]))
            })
        })
    };
    Ok(PropertyVerdict {
        property: "classical_clauses",
        holds: found.is_none(),
        witness: found,
    })
}

fn require(op: &ConsequenceOperator, postulates: &[Postulate]) -> Result<(), ConnectiveError> {
    for &p in postulates {
        let v = op.check_postulate(p);
        if !v.holds {
            return Err(ConnectiveError::PostulateFailure(v));
        }
    }
    Ok(())
}

fn require_rules(op: &ConsequenceOperator) -> Result<(), ConnectiveError> {
    for v in check_rules(op, &Rule::ALL)? {
        if !v.holds {
            return Err(ConnectiveError::RuleFailure(v));
        }
    }
    Ok(())
}

/// The five postulates, Weak Compactness and every rule.
pub fn validate_classical(op: &ConsequenceOperator) -> Result<(), ConnectiveError> {
    let mut needed = Postulate::FIVE.to_vec();
    needed.push(Postulate::WeakCompactness);
    require(op, &needed)?;
    require_rules(op)
}

/// Rebuilds a rule-abiding operator over its maximal consistent sets.
///
/// The maximal consistent sets are the theories `Th({w})` with
/// `f({w}) ≠ ∅`; each is identified with the valuation of `w`, so
/// satisfaction is classical. The choice function is
/// `f'(X) = X ∩ Mod(C(Th(X)))`.
pub fn represent_classical(op: &ConsequenceOperator) -> Result<(Arc<Universe>, ChoiceFunction), ConnectiveError> {
    validate_classical(op)?;
    let (f, _) = rule_setup(op)?;
    let u = f.universe();
    let maximal = maximal_consistent_extensions(op, &[]).unwrap_or_default();
    let worlds: Vec<usize> = maximal
        .iter()
        .map(|t| match t {
            Closure::Theory(t) => t.models().iter().next().expect("singleton"),
            Closure::Set { .. } => unreachable!("semantic operator"),
        })
        .collect();
    let atoms = u.atoms().expect("propositional");
    let valuations: Vec<u32> = worlds.iter().map(|&w| u.valuation(w).expect("propositional")).collect();
    let target = Arc::new(Universe::propositional_worlds(atoms, valuations)?);
    let to_old = |x: WorldSet| {
        WorldSet::from_indices(x.iter().map(|w| {
            let v = target.valuation(w).expect("propositional");
            (0..u.len()).find(|&o| u.valuation(o) == Some(v)).expect("same valuations")
        }))
    };
    let to_new = |x: WorldSet| {
        WorldSet::from_indices(x.iter().filter_map(|o| {
            let v = u.valuation(o);
            (0..target.len()).find(|&w| target.valuation(w) == v)
        }))
    };
    let g = ChoiceFunction::from_fn(&target, |x| x.intersection(to_new(f.at(to_old(x)))))?;
    Ok((target, g))
}

/// The operator `C(A) = Th({m})` when `m ⊨ A`, `L` otherwise.
pub fn point_operator(universe: &Arc<Universe>, world: usize) -> Result<ConsequenceOperator, ConnectiveError> {
    let m = WorldSet::singleton(world);
    universe.check_set(m)?;
    Ok(ConsequenceOperator::Semantic(ChoiceFunction::from_fn(universe, |x| x.intersection(m))?))
}

/// The outcome of [`embed_atomic`].
#[derive(Debug, Clone)]
pub struct Embedding {
    /// A semantic operator on the full propositional universe over the atoms.
    pub operator: ConsequenceOperator,
    /// True when `X ∩ f(Mod(Th(X)))` already extended the representation;
    /// false when the extension search was needed.
    pub direct: bool,
}

/// Extends a postulate-satisfying operator on a finite set of atoms to a
/// semantic operator on the propositional language over those atoms with
/// `P ∩ C'(A) = C(A)` for every `A ⊆ P`.
///
/// The theories of `C` become valuations (`p` true iff `p ∈ T`), the
/// representing choice function is extended from the definable sets to
/// every set of those valuations, and valuations that are not theories are
/// never chosen.
pub fn embed_atomic(op: &TabulatedOperator) -> Result<Embedding, ConnectiveError> {
    let atoms = op.language();
    let n = atoms.len();
    if n > MAX_EMBED_ATOMS {
        return Err(ConnectiveError::TooManyAtoms(n));
    }
    ConsequenceOperator::Tabulated(op.clone()).require_five()?;
    let code = |t: SentenceSet| -> u32 { (0..n).filter(|&i| t.contains(i)).map(|i| 1u32 << (n - 1 - i)).sum() };
    let mut theories = op.theories();
    theories.sort_by_key(|&t| code(t));
    let valuations: Vec<u32> = theories.iter().map(|&t| code(t)).collect();
    let (_, f) = represent_on(op, theories)?;
    let target = Arc::new(Universe::propositional_worlds(atoms, valuations.clone())?);
    let direct = ChoiceFunction::from_fn(&target, |x| f.extended_apply(x))?;
    let is_direct = direct.is_cclm();
    let g = if is_direct {
        direct
    } else {
        cclm_extension(&f, &target).ok_or(ConnectiveError::NoExtension)?
    };
    let full = Arc::new(Universe::propositional(atoms)?);
    let position = |w: usize| valuations.iter().position(|&v| Some(v) == full.valuation(w));
    let h = ChoiceFunction::from_fn(&full, |x| {
        let inside = WorldSet::from_indices(x.iter().filter_map(position));
        WorldSet::from_indices(g.at(inside).iter().map(|i| {
            (0..full.len())
                .find(|&w| full.valuation(w) == Some(valuations[i]))
                .expect("valuation present")
        }))
    })?;
    Ok(Embedding {
        operator: ConsequenceOperator::Semantic(h),
        direct: is_direct,
    })
}

/// The atoms of `P` in `C'(A)`, as a sentence set over `P`.
pub fn atoms_entailed(op: &ConsequenceOperator, atoms: &[String], premises: SentenceSet) -> Result<SentenceSet, ConnectiveError> {
    let a: Vec<Formula> = premises.iter().map(|i| Formula::Atom(atoms[i].clone())).collect();
    let closure = op.close(&a)?;
    let mut out = SentenceSet::EMPTY;
    for (i, p) in atoms.iter().enumerate() {
        if closure.contains(&Formula::Atom(p.clone()))? {
            out = out.with(i);
        }
    }
    Ok(out)
}
