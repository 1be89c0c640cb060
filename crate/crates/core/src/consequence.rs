//! Consequence operators `C : 2^L → 2^L`, their postulates, the monotone
//! core `Cn`, combinators, and the representation of postulate-satisfying
//! operators by choice functions on theories.
//!
//! A [`ConsequenceOperator`] is either *semantic*, `C(A) = Th(f(Mod(A)))` for
//! a choice function `f`, or *tabulated*, an explicit table over the subsets
//! of a finite abstract language.
//!
//! Postulates of a tabulated operator are checked over every subset of the
//! language. A semantic operator depends on `A` only through `Mod(A)` and
//! every output is closed, so its postulates are checked over the closed
//! premise sets `Th(X)`, `X` definable, encoded by `X` itself: union of
//! premises becomes intersection of world sets, inclusion of premises becomes
//! reverse inclusion, and `C(Th(X))` is `Mod(Th(f(X)))`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{all_sentence_sets, SentenceSet, WorldSet};
use crate::choice::{ChoiceError, ChoiceFunction, UnknownName};
use crate::formula::{is_atom_name, Formula};
use crate::universe::{Theory, Universe, UniverseError};

/// Largest tabulated language.
pub const MAX_LANGUAGE: usize = 8;
/// Largest language for exhaustive table enumeration.
pub const MAX_ENUMERATION_LANGUAGE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsequenceError {
    #[error("sentence `{0}` is not in the operator's language")]
    NotInLanguage(String),
    #[error("language has {0} sentences; at most {MAX_LANGUAGE} are supported here")]
    LanguageTooLarge(usize),
    #[error("invalid sentence name `{0}`")]
    InvalidName(String),
    #[error("duplicate sentence `{0}`")]
    Duplicate(String),
    #[error("table has {got} entries; expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("no table entry for premise set {0:?}")]
    MissingEntry(Vec<String>),
    #[error("table entry for {0:?} given twice")]
    DuplicateEntry(Vec<String>),
    #[error("operator fails {}", .0.postulate)]
    PostulateFailure(PostulateVerdict),
    #[error("operators do not share a language")]
    LanguageMismatch,
    #[error("empty operator list")]
    NoOperators,
    #[error("operation requires an operator over an abstract language")]
    NotAbstract,
    #[error("operation requires a semantic operator over a propositional universe")]
    NotPropositional,
    #[error("representation needs {0} worlds; at most {max} are supported", max = crate::universe::MAX_WORLDS)]
    TooManyTheories(usize),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Choice(#[from] ChoiceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Postulate {
    Inclusion,
    Idempotence,
    CautiousMonotonicity,
    ConditionalMonotonicity,
    ThresholdMonotonicity,
    Cumulativity,
    RationalMonotonicity,
    Monotonicity,
    WeakCompactness,
}

impl Postulate {
    pub const ALL: [Postulate; 9] = [
        Postulate::Inclusion,
        Postulate::Idempotence,
        Postulate::CautiousMonotonicity,
        Postulate::ConditionalMonotonicity,
        Postulate::ThresholdMonotonicity,
        Postulate::Cumulativity,
        Postulate::RationalMonotonicity,
        Postulate::Monotonicity,
        Postulate::WeakCompactness,
    ];

    /// The five postulates characterizing CCLM semantics.
    pub const FIVE: [Postulate; 5] = [
        Postulate::Inclusion,
        Postulate::Idempotence,
        Postulate::CautiousMonotonicity,
        Postulate::ConditionalMonotonicity,
        Postulate::ThresholdMonotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Postulate::Inclusion => "inclusion",
            Postulate::Idempotence => "idempotence",
            Postulate::CautiousMonotonicity => "cautious_monotonicity",
            Postulate::ConditionalMonotonicity => "conditional_monotonicity",
            Postulate::ThresholdMonotonicity => "threshold_monotonicity",
            Postulate::Cumulativity => "cumulativity",
            Postulate::RationalMonotonicity => "rational_monotonicity",
            Postulate::Monotonicity => "monotonicity",
            Postulate::WeakCompactness => "weak_compactness",
        }
    }
}

impl fmt::Display for Postulate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Postulate {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Postulate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

/// A premise set appearing in a postulate witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PremiseSet {
    /// An explicit subset of a tabulated language.
    Sentences(SentenceSet),
    /// The closed set `Th(X)` of a semantic operator, held as `X`.
    Closed(WorldSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateWitness {
    pub sets: Vec<(&'static str, PremiseSet)>,
}

impl PostulateWitness {
    pub fn get(&self, name: &str) -> Option<PremiseSet> {
        self.sets.iter().find(|(n, _)| *n == name).map(|&(_, s)| s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateVerdict {
    pub postulate: &'static str,
    pub holds: bool,
    pub witness: Option<PostulateWitness>,
}

/// A finite table over the subsets of an abstract language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabulatedOperator {
    language: Arc<Vec<String>>,
    table: Vec<SentenceSet>,
}

impl TabulatedOperator {
    /// `table[A]` is `C(A)`, indexed by the bit pattern of `A` (sentence `i` is bit `i`).
    pub fn new<S: AsRef<str>>(language: &[S], table: Vec<SentenceSet>) -> Result<TabulatedOperator, ConsequenceError> {
        let language = check_language(language)?;
        let expected = 1usize << language.len();
        if table.len() != expected {
            return Err(ConsequenceError::TableSize {
                expected,
                got: table.len(),
            });
        }
        let full = SentenceSet::full(language.len());
        if let Some(bad) = table.iter().find(|c| !c.is_subset(full)) {
            return Err(ConsequenceError::NotInLanguage(format!("{bad:?}")));
        }
        Ok(TabulatedOperator {
            language: Arc::new(language),
            table,
        })
    }

    pub fn from_fn<S, F>(language: &[S], mut close: F) -> Result<TabulatedOperator, ConsequenceError>
    where
        S: AsRef<str>,
        F: FnMut(SentenceSet) -> SentenceSet,
    {
        let n = language.len();
        if n > MAX_LANGUAGE {
            return Err(ConsequenceError::LanguageTooLarge(n));
        }
        TabulatedOperator::new(language, all_sentence_sets(n).map(&mut close).collect())
    }

    /// Builds from named `(A, C(A))` rows covering every subset exactly once.
    pub fn from_rows<S: AsRef<str>>(
        language: &[S],
        rows: &[(Vec<String>, Vec<String>)],
    ) -> Result<TabulatedOperator, ConsequenceError> {
        let names = check_language(language)?;
        let lookup = |list: &[String]| -> Result<SentenceSet, ConsequenceError> {
            list.iter().try_fold(SentenceSet::EMPTY, |acc, s| {
                names
                    .iter()
                    .position(|x| x == s)
                    .map(|i| acc.with(i))
                    .ok_or_else(|| ConsequenceError::NotInLanguage(s.clone()))
            })
        };
        let mut table: Vec<Option<SentenceSet>> = vec![None; 1 << names.len()];
        for (a, c) in rows {
            let a_set = lookup(a)?;
            let c_set = lookup(c)?;
            if table[a_set.index()].replace(c_set).is_some() {
                return Err(ConsequenceError::DuplicateEntry(a.clone()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    ConsequenceError::MissingEntry(set_names(&names, SentenceSet(i as u64)))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        TabulatedOperator::new(&names, table)
    }

    pub fn language(&self) -> &[String] {
        &self.language
    }

    pub fn table(&self) -> &[SentenceSet] {
        &self.table
    }

    pub fn full(&self) -> SentenceSet {
        SentenceSet::full(self.language.len())
    }

    pub fn close_set(&self, a: SentenceSet) -> SentenceSet {
        self.table[a.index()]
    }

    /// `Cn(A)`: the intersection of `C(A ∪ B)` over every `B`.
    pub fn cn_set(&self, a: SentenceSet) -> SentenceSet {
        all_sentence_sets(self.language.len())
            .fold(self.full(), |acc, b| acc.intersection(self.close_set(a.union(b))))
    }

    /// The theories `T = C(T)`, in increasing bit order.
    pub fn theories(&self) -> Vec<SentenceSet> {
        all_sentence_sets(self.language.len())
            .filter(|&t| self.close_set(t) == t)
            .collect()
    }

    pub fn sentence_set(&self, sentences: &[Formula]) -> Result<SentenceSet, ConsequenceError> {
        sentences.iter().try_fold(SentenceSet::EMPTY, |acc, s| {
            Ok(acc.with(self.sentence_index(s)?))
        })
    }

    pub fn sentence_index(&self, s: &Formula) -> Result<usize, ConsequenceError> {
        match s {
            Formula::Atom(name) => self
                .language
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| ConsequenceError::NotInLanguage(name.clone())),
            other => Err(ConsequenceError::NotInLanguage(other.render())),
        }
    }

    pub fn names(&self, s: SentenceSet) -> Vec<String> {
        set_names(&self.language, s)
    }
}

fn check_language<S: AsRef<str>>(language: &[S]) -> Result<Vec<String>, ConsequenceError> {
    if language.len() > MAX_LANGUAGE {
        return Err(ConsequenceError::LanguageTooLarge(language.len()));
    }
    let names: Vec<String> = language.iter().map(|s| s.as_ref().to_owned()).collect();
    for (i, s) in names.iter().enumerate() {
        if !is_atom_name(s) {
            return Err(ConsequenceError::InvalidName(s.clone()));
        }
        if names[..i].contains(s) {
            return Err(ConsequenceError::Duplicate(s.clone()));
        }
    }
    Ok(names)
}

fn set_names(language: &[String], s: SentenceSet) -> Vec<String> {
    s.iter().map(|i| language[i].clone()).collect()
}

/// Every table over a language of at most [`MAX_ENUMERATION_LANGUAGE`]
/// sentences, with the entry for the empty set varying slowest.
pub fn enumerate_tables<S: AsRef<str>>(
    language: &[S],
) -> Result<impl Iterator<Item = TabulatedOperator>, ConsequenceError> {
    let names = Arc::new(check_language(language)?);
    let n = names.len();
    if n > MAX_ENUMERATION_LANGUAGE {
        return Err(ConsequenceError::LanguageTooLarge(n));
    }
    let slots = 1usize << n;
    let values = 1u64 << n;
    let total = values.pow(slots as u32);
    Ok((0..total).map(move |code| {
        let table = (0..slots)
            .map(|i| SentenceSet(code / values.pow((slots - 1 - i) as u32) % values))
            .collect();
        TabulatedOperator {
            language: Arc::clone(&names),
            table,
        }
    }))
}

/// The result of closing a premise set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    /// `Th(Y)` for the chosen worlds `Y` of a semantic operator.
    Theory(Theory),
    /// An explicit subset of a tabulated language.
    Set {
        language: Arc<Vec<String>>,
        set: SentenceSet,
    },
}

impl Closure {
    pub fn contains(&self, s: &Formula) -> Result<bool, ConsequenceError> {
        match self {
            Closure::Theory(t) => Ok(t.contains(s)?),
            Closure::Set { language, set } => match s {
                Formula::Atom(name) => language
                    .iter()
                    .position(|x| x == name)
                    .map(|i| set.contains(i))
                    .ok_or_else(|| ConsequenceError::NotInLanguage(name.clone())),
                other => Err(ConsequenceError::NotInLanguage(other.render())),
            },
        }
    }

    /// True when the closure is the whole language.
    pub fn is_everything(&self) -> bool {
        match self {
            Closure::Theory(t) => t.is_everything(),
            Closure::Set { language, set } => *set == SentenceSet::full(language.len()),
        }
    }

    /// Sentence names, or a single representative formula for propositional theories.
    pub fn names(&self) -> Vec<String> {
        match self {
            Closure::Theory(t) => match t.sentence_names() {
                Some(names) => names,
                None => vec![t
                    .universe()
                    .representative(t.models())
                    .expect("propositional theory")
                    .render()],
            },
            Closure::Set { language, set } => set_names(language, *set),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConsequenceOperator {
    Semantic(ChoiceFunction),
    Tabulated(TabulatedOperator),
}

/// Which worlds a representation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Every theory `T = C(T)`, the inconsistent one included.
    AllTheories,
    /// Every `T ≠ L` with `T = Cn(T)`; needed for the Arrow correspondence.
    ConsistentCnClosed,
}

trait PremiseSpace {
    fn elements(&self) -> Vec<u64>;
    fn join(&self, a: u64, b: u64) -> u64;
    fn le(&self, a: u64, b: u64) -> bool;
    fn close(&self, a: u64) -> u64;
    fn full(&self) -> u64;
    fn finite_subsets(&self, a: u64) -> Vec<u64>;
}

struct TableSpace<'a>(&'a TabulatedOperator);

impl PremiseSpace for TableSpace<'_> {
    fn elements(&self) -> Vec<u64> {
        (0..1u64 << self.0.language.len()).collect()
    }
    fn join(&self, a: u64, b: u64) -> u64 {
        a | b
    }
    fn le(&self, a: u64, b: u64) -> bool {
        a & !b == 0
    }
    fn close(&self, a: u64) -> u64 {
        self.0.table[a as usize].bits()
    }
    fn full(&self) -> u64 {
        self.0.full().bits()
    }
    fn finite_subsets(&self, a: u64) -> Vec<u64> {
        SentenceSet(a).subsets().map(|s| s.bits()).collect()
    }
}

struct ModelSpace<'a>(&'a ChoiceFunction);

impl PremiseSpace for ModelSpace<'_> {
    fn elements(&self) -> Vec<u64> {
        self.0.universe().definable_sets().iter().map(|x| x.bits()).collect()
    }
    fn join(&self, a: u64, b: u64) -> u64 {
        a & b
    }
    fn le(&self, a: u64, b: u64) -> bool {
        b & !a == 0
    }
    fn close(&self, a: u64) -> u64 {
        let u = self.0.universe();
        u.closure(self.0.at(WorldSet(a))).bits()
    }
    fn full(&self) -> u64 {
        self.0.universe().closure(WorldSet::EMPTY).bits()
    }
    // Finite subsets of Th(X) have definable supersets of X as models, and
    // every such superset is the model set of finitely many sentences.
    fn finite_subsets(&self, a: u64) -> Vec<u64> {
        let u = self.0.universe();
        WorldSet(a)
            .supersets_within(u.all())
            .filter(|&y| u.is_definable(y))
            .map(|y| y.bits())
            .collect()
    }
}

type Found = Option<Vec<(&'static str, u64)>>;

fn search_postulate<S: PremiseSpace>(s: &S, p: Postulate) -> Found {
    let els = s.elements();
    let pairs = || els.iter().flat_map(|&a| els.iter().map(move |&b| (a, b)));
    match p {
        Postulate::Inclusion => els
            .iter()
            .find(|&&a| !s.le(a, s.close(a)))
            .map(|&a| vec![("A", a)]),
        Postulate::Idempotence => els
            .iter()
            .find(|&&a| s.close(s.close(a)) != s.close(a))
            .map(|&a| vec![("A", a)]),
        Postulate::CautiousMonotonicity => pairs()
            .find(|&(a, b)| s.le(a, b) && s.le(b, s.close(a)) && !s.le(s.close(a), s.close(b)))
            .map(|(a, b)| vec![("A", a), ("B", b)]),
        Postulate::Cumulativity => pairs()
            .find(|&(a, b)| s.le(a, b) && s.le(b, s.close(a)) && s.close(a) != s.close(b))
            .map(|(a, b)| vec![("A", a), ("B", b)]),
        Postulate::ConditionalMonotonicity => pairs()
            .find(|&(a, b)| !s.le(s.close(s.join(a, b)), s.close(s.join(s.close(a), b))))
            .map(|(a, b)| vec![("A", a), ("B", b)]),
        // A enters only through C(A): one representative A per value suffices.
        Postulate::ThresholdMonotonicity => {
            let mut seen: Vec<u64> = Vec::new();
            for &a in &els {
                let ca = s.close(a);
                if seen.contains(&ca) {
                    continue;
                }
                seen.push(ca);
                for &b in els.iter().filter(|&&b| s.le(ca, b)) {
                    let cb = s.close(b);
                    if let Some(&c) = els.iter().find(|&&c| s.le(b, c) && !s.le(cb, s.close(c))) {
                        return Some(vec![("A", a), ("B", b), ("C", c)]);
                    }
                }
            }
            None
        }
        Postulate::RationalMonotonicity => pairs()
            .find(|&(a, b)| {
                s.close(s.join(s.close(a), b)) != s.full() && !s.le(s.close(a), s.close(s.join(a, b)))
            })
            .map(|(a, b)| vec![("A", a), ("B", b)]),
        Postulate::Monotonicity => pairs()
            .find(|&(a, b)| s.le(a, b) && !s.le(s.close(a), s.close(b)))
            .map(|(a, b)| vec![("A", a), ("B", b)]),
        Postulate::WeakCompactness => els
            .iter()
            .find(|&&a| {
                s.close(a) == s.full() && !s.finite_subsets(a).iter().any(|&b| s.close(b) == s.full())
            })
            .map(|&a| vec![("A", a)]),
    }
}

fn recheck<S: PremiseSpace>(s: &S, p: Postulate, get: &dyn Fn(&str) -> Option<u64>) -> bool {
    let (a, b, c) = (get("A"), get("B"), get("C"));
    match (p, a, b, c) {
        (Postulate::Inclusion, Some(a), _, _) => !s.le(a, s.close(a)),
        (Postulate::Idempotence, Some(a), _, _) => s.close(s.close(a)) != s.close(a),
        (Postulate::CautiousMonotonicity, Some(a), Some(b), _) => {
            s.le(a, b) && s.le(b, s.close(a)) && !s.le(s.close(a), s.close(b))
        }
        (Postulate::Cumulativity, Some(a), Some(b), _) => {
            s.le(a, b) && s.le(b, s.close(a)) && s.close(a) != s.close(b)
        }
        (Postulate::ConditionalMonotonicity, Some(a), Some(b), _) => {
            !s.le(s.close(s.join(a, b)), s.close(s.join(s.close(a), b)))
        }
        (Postulate::ThresholdMonotonicity, Some(a), Some(b), Some(c)) => {
            s.le(s.close(a), b) && s.le(b, c) && !s.le(s.close(b), s.close(c))
        }
        (Postulate::RationalMonotonicity, Some(a), Some(b), _) => {
            s.close(s.join(s.close(a), b)) != s.full() && !s.le(s.close(a), s.close(s.join(a, b)))
        }
        (Postulate::Monotonicity, Some(a), Some(b), _) => s.le(a, b) && !s.le(s.close(a), s.close(b)),
        (Postulate::WeakCompactness, Some(a), _, _) => {
            s.close(a) == s.full() && !s.finite_subsets(a).iter().any(|&b| s.close(b) == s.full())
        }
        _ => false,
    }
}

impl ConsequenceOperator {
    pub fn universe(&self) -> Option<&Arc<Universe>> {
        match self {
            ConsequenceOperator::Semantic(f) => Some(f.universe()),
            ConsequenceOperator::Tabulated(_) => None,
        }
    }

    pub fn choice(&self) -> Option<&ChoiceFunction> {
        match self {
            ConsequenceOperator::Semantic(f) => Some(f),
            ConsequenceOperator::Tabulated(_) => None,
        }
    }

    pub fn is_propositional(&self) -> bool {
        self.universe().is_some_and(|u| u.is_propositional())
    }

    /// `C(A)`.
    pub fn close(&self, premises: &[Formula]) -> Result<Closure, ConsequenceError> {
        match self {
            ConsequenceOperator::Semantic(f) => {
                let u = f.universe();
                let x = u.mod_set(premises)?;
                Ok(Closure::Theory(u.theory_of(f.at(x))?))
            }
            ConsequenceOperator::Tabulated(t) => Ok(Closure::Set {
                language: Arc::clone(&t.language),
                set: t.close_set(t.sentence_set(premises)?),
            }),
        }
    }

    /// `a ∈ C(A)`.
    pub fn entails(&self, premises: &[Formula], query: &Formula) -> Result<bool, ConsequenceError> {
        self.close(premises)?.contains(query)
    }

    /// `Cn(A)`: `Th(Mod(A))` for semantic operators, the intersection of
    /// `C(A ∪ B)` over all `B` for tabulated ones.
    pub fn cn(&self, premises: &[Formula]) -> Result<Closure, ConsequenceError> {
        match self {
            ConsequenceOperator::Semantic(f) => {
                let u = f.universe();
                Ok(Closure::Theory(u.theory_of(u.mod_set(premises)?)?))
            }
            ConsequenceOperator::Tabulated(t) => Ok(Closure::Set {
                language: Arc::clone(&t.language),
                set: t.cn_set(t.sentence_set(premises)?),
            }),
        }
    }

    /// The intersection of `C(A ∪ B)` over all premise sets `B`, for either
    /// variant. For semantic operators `B` ranges over closed sets.
    pub fn cn_by_intersection(&self, premises: &[Formula]) -> Result<Closure, ConsequenceError> {
        match self {
            ConsequenceOperator::Semantic(f) => {
                let u = f.universe();
                let x = u.mod_set(premises)?;
                let chosen = u
                    .definable_sets()
                    .into_iter()
                    .fold(WorldSet::EMPTY, |acc, y| acc.union(f.at(x.intersection(y))));
                Ok(Closure::Theory(u.theory_of(chosen)?))
            }
            ConsequenceOperator::Tabulated(_) => self.cn(premises),
        }
    }

    pub fn check_postulate(&self, p: Postulate) -> PostulateVerdict {
        let (found, wrap): (Found, fn(u64) -> PremiseSet) = match self {
            ConsequenceOperator::Semantic(f) => (
                search_postulate(&ModelSpace(f), p),
                |b| PremiseSet::Closed(WorldSet(b)),
            ),
            ConsequenceOperator::Tabulated(t) => (
                search_postulate(&TableSpace(t), p),
                |b| PremiseSet::Sentences(SentenceSet(b)),
            ),
        };
        PostulateVerdict {
            postulate: p.name(),
            holds: found.is_none(),
            witness: found.map(|sets| PostulateWitness {
                sets: sets.into_iter().map(|(n, b)| (n, wrap(b))).collect(),
            }),
        }
    }

    pub fn satisfies(&self, p: Postulate) -> bool {
        self.check_postulate(p).holds
    }

    /// Inclusion, Idempotence, Cautious, Conditional and Threshold Monotonicity.
    pub fn satisfies_five(&self) -> bool {
        Postulate::FIVE.into_iter().all(|p| self.satisfies(p))
    }

    pub(crate) fn require_five(&self) -> Result<(), ConsequenceError> {
        for p in Postulate::FIVE {
            let v = self.check_postulate(p);
            if !v.holds {
                return Err(ConsequenceError::PostulateFailure(v));
            }
        }
        Ok(())
    }

    /// Re-evaluates the postulate's defining condition at a witness.
    pub fn violates(&self, p: Postulate, w: &PostulateWitness) -> bool {
        match self {
            ConsequenceOperator::Semantic(f) => {
                let u = f.universe();
                let get = |n: &str| match w.get(n) {
                    Some(PremiseSet::Closed(x)) if u.is_definable(x) => Some(x.bits()),
                    _ => None,
                };
                recheck(&ModelSpace(f), p, &get)
            }
            ConsequenceOperator::Tabulated(t) => {
                let get = |n: &str| match w.get(n) {
                    Some(PremiseSet::Sentences(s)) if s.is_subset(t.full()) => Some(s.bits()),
                    _ => None,
                };
                recheck(&TableSpace(t), p, &get)
            }
        }
    }

    /// Sentence names of a witness set: explicit names for abstract
    /// languages, one representative formula for propositional closed sets.
    pub fn premise_names(&self, s: &PremiseSet) -> Vec<String> {
        match (self, s) {
            (ConsequenceOperator::Tabulated(t), PremiseSet::Sentences(a)) => t.names(*a),
            (ConsequenceOperator::Semantic(f), PremiseSet::Closed(x)) => {
                let u = f.universe();
                if u.is_propositional() {
                    vec![u.representative(*x).expect("propositional").render()]
                } else {
                    u.sentence_names(u.theory_set(*x))
                }
            }
            (_, PremiseSet::Sentences(a)) => vec![format!("{a:?}")],
            (_, PremiseSet::Closed(x)) => vec![format!("{x:?}")],
        }
    }

    /// The explicit table of an operator over an abstract language.
    pub fn tabulate(&self) -> Result<TabulatedOperator, ConsequenceError> {
        match self {
            ConsequenceOperator::Tabulated(t) => Ok(t.clone()),
            ConsequenceOperator::Semantic(f) => {
                let u = f.universe();
                let sentences = u.sentences().ok_or(ConsequenceError::NotAbstract)?;
                TabulatedOperator::from_fn(sentences, |a| {
                    u.theory_set(f.at(u.mod_of_sentence_set(a)))
                })
            }
        }
    }

    /// The theories `T = C(T)` of an operator over an abstract language.
    pub fn theories(&self) -> Result<Vec<SentenceSet>, ConsequenceError> {
        Ok(self.tabulate()?.theories())
    }

    /// Same set of theories; distinct operators may share it.
    pub fn same_theories(&self, other: &ConsequenceOperator) -> Result<bool, ConsequenceError> {
        let (a, b) = (self.tabulate()?, other.tabulate()?);
        Ok(a.language == b.language && a.theories() == b.theories())
    }

    /// Extensional equality over every premise set.
    pub fn extensionally_equal(&self, other: &ConsequenceOperator) -> Result<bool, ConsequenceError> {
        match (self, other) {
            (ConsequenceOperator::Semantic(f), ConsequenceOperator::Semantic(g))
                if f.universe().is_propositional() || g.universe().is_propositional() =>
            {
                propositional_equal(f, g)
            }
            _ => Ok(self.tabulate()? == other.tabulate()?),
        }
    }

    /// `C'(A) = C(A ∪ B)`.
    pub fn with_background(&self, background: &[Formula]) -> Result<ConsequenceOperator, ConsequenceError> {
        match self {
            ConsequenceOperator::Tabulated(t) => {
                let b = t.sentence_set(background)?;
                Ok(ConsequenceOperator::Tabulated(TabulatedOperator {
                    language: Arc::clone(&t.language),
                    table: all_sentence_sets(t.language.len())
                        .map(|a| t.close_set(a.union(b)))
                        .collect(),
                }))
            }
            ConsequenceOperator::Semantic(f) => {
                let mb = f.universe().mod_set(background)?;
                Ok(ConsequenceOperator::Semantic(ChoiceFunction::from_fn(f.universe(), |x| {
                    f.at(x.intersection(mb))
                })?))
            }
        }
    }
}

/// Compares two semantic operators over propositional universes on the same
/// atoms: `Th` is injective on valuation sets, so the operators agree iff
/// they choose the same valuations from every set of valuations.
fn propositional_equal(f: &ChoiceFunction, g: &ChoiceFunction) -> Result<bool, ConsequenceError> {
    let (uf, ug) = (f.universe(), g.universe());
    let atoms = match (uf.atoms(), ug.atoms()) {
        (Some(a), Some(b)) if a == b => a,
        _ => return Err(ConsequenceError::LanguageMismatch),
    };
    let n = atoms.len();
    let to_worlds = |u: &Universe, vals: u64| {
        WorldSet::from_indices((0..u.len()).filter(|&w| vals >> u.valuation(w).unwrap() & 1 == 1))
    };
    let to_vals = |u: &Universe, x: WorldSet| x.iter().fold(0u64, |acc, w| acc | 1 << u.valuation(w).unwrap());
    Ok((0..1u64 << (1usize << n)).all(|vals| {
        to_vals(uf, f.at(to_worlds(uf, vals))) == to_vals(ug, g.at(to_worlds(ug, vals)))
    }))
}

/// The universe and choice function representing a postulate-satisfying
/// operator over an abstract language: worlds are theories, `T ⊨ a` iff
/// `a ∈ T`, and `f(X) = X ∩ Mod(C(Th(X)))`.
pub fn represent(
    op: &ConsequenceOperator,
    variant: Representation,
) -> Result<(Arc<Universe>, ChoiceFunction), ConsequenceError> {
    let t = op.tabulate()?;
    ConsequenceOperator::Tabulated(t.clone()).require_five()?;
    let worlds: Vec<SentenceSet> = match variant {
        Representation::AllTheories => t.theories(),
        Representation::ConsistentCnClosed => all_sentence_sets(t.language.len())
            .filter(|&s| s != t.full() && t.cn_set(s) == s)
            .collect(),
    };
    represent_on(&t, worlds)
}

/// The representation over a given list of sentence sets as worlds.
pub(crate) fn represent_on(
    t: &TabulatedOperator,
    worlds: Vec<SentenceSet>,
) -> Result<(Arc<Universe>, ChoiceFunction), ConsequenceError> {
    if worlds.len() > crate::universe::MAX_WORLDS {
        return Err(ConsequenceError::TooManyTheories(worlds.len()));
    }
    let names = worlds
        .iter()
        .map(|&s| format!("{{{}}}", t.names(s).join(",")))
        .collect();
    let universe = Arc::new(Universe::from_abstract_parts(
        t.language.to_vec(),
        names,
        worlds,
    ));
    let f = ChoiceFunction::from_fn(&universe, |x| {
        x.intersection(universe.mod_of_sentence_set(t.close_set(universe.theory_set(x))))
    })?;
    Ok((universe, f))
}

/// The operator whose closures are the intersections of the components'.
///
/// Semantic operators on one propositional universe combine by the
/// pointwise union of their choice functions. Otherwise every component is
/// represented over an abstract universe and the result lives on their
/// disjoint union, worlds renamed `i:name`, choosing within each part.
pub fn intersect(ops: &[ConsequenceOperator]) -> Result<ConsequenceOperator, ConsequenceError> {
    let first = ops.first().ok_or(ConsequenceError::NoOperators)?;
    if ops.len() == 1 {
        return Ok(first.clone());
    }
    for op in ops {
        op.require_five()?;
    }
    if let Some(u) = first.universe().filter(|u| u.is_propositional()) {
        let fs: Vec<&ChoiceFunction> = ops.iter().filter_map(|op| op.choice()).collect();
        if fs.len() != ops.len() || fs.iter().any(|f| **f.universe() != **u) {
            return Err(ConsequenceError::LanguageMismatch);
        }
        return Ok(ConsequenceOperator::Semantic(ChoiceFunction::from_fn(u, |x| {
            fs.iter().fold(WorldSet::EMPTY, |acc, f| acc.union(f.at(x)))
        })?));
    }
    let mut parts: Vec<(Arc<Universe>, ChoiceFunction)> = Vec::new();
    for op in ops {
        match op {
            ConsequenceOperator::Semantic(f) if !f.universe().is_propositional() => {
                parts.push((Arc::clone(f.universe()), f.clone()))
            }
            ConsequenceOperator::Semantic(_) => return Err(ConsequenceError::LanguageMismatch),
            ConsequenceOperator::Tabulated(_) => parts.push(represent(op, Representation::AllTheories)?),
        }
    }
    let sentences = parts[0].0.sentences().expect("abstract").to_vec();
    if parts.iter().any(|(u, _)| u.sentences() != Some(&sentences[..])) {
        return Err(ConsequenceError::LanguageMismatch);
    }
    let total: usize = parts.iter().map(|(u, _)| u.len()).sum();
    if total > crate::universe::MAX_WORLDS {
        return Err(ConsequenceError::TooManyTheories(total));
    }
    let mut names = Vec::with_capacity(total);
    let mut satisfies = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    for (i, (u, _)) in parts.iter().enumerate() {
        offsets.push(names.len());
        for w in 0..u.len() {
            names.push(format!("{}:{}", i + 1, u.world_name(w)));
            satisfies.push(u.satisfied_by(w).expect("abstract"));
        }
    }
    let universe = Arc::new(Universe::from_abstract_parts(sentences, names, satisfies));
    let f = ChoiceFunction::from_fn(&universe, |x| {
        parts
            .iter()
            .zip(&offsets)
            .fold(WorldSet::EMPTY, |acc, ((u, g), &off)| {
                let local = WorldSet((x.bits() >> off) & u.all().bits());
                acc.union(WorldSet(g.at(local).bits() << off))
            })
    })?;
    Ok(ConsequenceOperator::Semantic(f))
}
