//! Finite model universes, the satisfaction relation and the Mod/Th Galois
//! connection between sentence sets and world sets.
//!
//! A universe is either *propositional* (worlds are valuations of an atom
//! list and sentences are [`Formula`]s) or *abstract* (worlds satisfy an
//! explicit subset of a finite sentence list, and sentences are bare atoms
//! naming list entries). Worlds are kept in a canonical order: valuation order
//! with the first atom most significant, or declaration order.
//!
//! Every universe precomputes the closure `Mod(Th(X))` of each world set, so
//! definability checks are table lookups. This bounds universes to
//! [`MAX_WORLDS`] worlds.

use std::sync::Arc;

use thiserror::Error;

use crate::bits::{all_world_sets, SentenceSet, WorldSet};
use crate::formula::{is_atom_name, Formula};

/// Largest universe this crate will build.
pub const MAX_WORLDS: usize = 16;
/// Largest abstract sentence list.
pub const MAX_SENTENCES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniverseError {
    #[error("universe has {0} worlds; at most {MAX_WORLDS} are supported")]
    TooManyWorlds(usize),
    #[error("abstract language has {0} sentences; at most {MAX_SENTENCES} are supported")]
    TooManySentences(usize),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("world `{world}` satisfies `{sentence}`, which is not in the sentence list")]
    UnknownSatisfied { world: String, sentence: String },
    #[error("sentence `{0}` is not in the language of this universe")]
    NotInLanguage(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world set {0:?} is not a subset of this universe")]
    OutOfRange(WorldSet),
    #[error("malformed valuation `{0}`")]
    BadValuation(String),
    #[error("operation requires a propositional universe")]
    NotPropositional,
    #[error("operation requires an abstract universe")]
    NotAbstract,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Mode {
    Propositional {
        atoms: Vec<String>,
        /// Per world, the valuation as a bit pattern; atom `j` of `n` is bit `n-1-j`.
        valuations: Vec<u32>,
    },
    Abstract {
        sentences: Vec<String>,
        satisfies: Vec<SentenceSet>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    mode: Mode,
    names: Vec<String>,
    closure: Vec<WorldSet>,
}

impl Universe {
    /// The full propositional universe over `atoms`: one world per valuation.
    pub fn propositional<S: AsRef<str>>(atoms: &[S]) -> Result<Universe, UniverseError> {
        let n = atoms.len();
        if n > MAX_WORLDS.trailing_zeros() as usize {
            return Err(UniverseError::TooManyWorlds(1 << n.min(63)));
        }
        Universe::propositional_worlds(atoms, (0..1u32 << n).collect())
    }

    /// A propositional universe containing only the listed valuations.
    ///
    /// Valuations are bit patterns with the first atom most significant; they
    /// must be distinct, which keeps every world set definable.
    pub fn propositional_worlds<S: AsRef<str>>(
        atoms: &[S],
        mut valuations: Vec<u32>,
    ) -> Result<Universe, UniverseError> {
        let atoms: Vec<String> = atoms.iter().map(|a| a.as_ref().to_owned()).collect();
        for (i, a) in atoms.iter().enumerate() {
            if !is_atom_name(a) {
                return Err(UniverseError::InvalidAtom(a.clone()));
            }
            if atoms[..i].contains(a) {
                return Err(UniverseError::Duplicate(a.clone()));
            }
        }
        let n = atoms.len();
        valuations.sort_unstable();
        valuations.dedup();
        if valuations.len() > MAX_WORLDS {
            return Err(UniverseError::TooManyWorlds(valuations.len()));
        }
        if let Some(&v) = valuations.iter().find(|&&v| n < 32 && v >> n != 0) {
            return Err(UniverseError::BadValuation(format!("{v:#b}")));
        }
        let names = valuations
            .iter()
            .map(|&v| valuation_name(&atoms, v))
            .collect();
        let m = valuations.len();
        let closure = all_world_sets(m).collect();
        Ok(Universe {
            mode: Mode::Propositional { atoms, valuations },
            names,
            closure,
        })
    }

    /// An abstract universe: each world lists the sentences it satisfies.
    pub fn abstract_universe<S: AsRef<str>, W: AsRef<str>>(
        sentences: &[S],
        worlds: &[(W, Vec<S>)],
    ) -> Result<Universe, UniverseError> {
        let sentences: Vec<String> = sentences.iter().map(|s| s.as_ref().to_owned()).collect();
        if sentences.len() > MAX_SENTENCES {
            return Err(UniverseError::TooManySentences(sentences.len()));
        }
        if worlds.len() > MAX_WORLDS {
            return Err(UniverseError::TooManyWorlds(worlds.len()));
        }
        for (i, s) in sentences.iter().enumerate() {
            if sentences[..i].contains(s) {
                return Err(UniverseError::Duplicate(s.clone()));
            }
        }
        let mut names = Vec::with_capacity(worlds.len());
        let mut satisfies = Vec::with_capacity(worlds.len());
        for (name, sat) in worlds {
            let name = name.as_ref().to_owned();
            if names.contains(&name) {
                return Err(UniverseError::Duplicate(name));
            }
            let mut set = SentenceSet::EMPTY;
            for s in sat {
                let idx = sentences.iter().position(|x| x == s.as_ref()).ok_or_else(|| {
                    UniverseError::UnknownSatisfied {
                        world: name.clone(),
                        sentence: s.as_ref().to_owned(),
                    }
                })?;
                set = set.with(idx);
            }
            names.push(name);
            satisfies.push(set);
        }
        Ok(Universe::from_abstract_parts(sentences, names, satisfies))
    }

    pub(crate) fn from_abstract_parts(
        sentences: Vec<String>,
        names: Vec<String>,
        satisfies: Vec<SentenceSet>,
    ) -> Universe {
        let mut u = Universe {
            mode: Mode::Abstract {
                sentences,
                satisfies,
            },
            names,
            closure: Vec::new(),
        };
        u.closure = all_world_sets(u.len())
            .map(|x| u.mod_of_sentence_set(u.theory_set(x)))
            .collect();
        u
    }

    /// Abstract universe on worlds `w1..wn` with one sentence per world set,
    /// so that every set is definable. Sentence `sB` for a bit string `B`
    /// holds exactly at the worlds whose position in `B` is `1`.
    pub fn discrete(n: usize) -> Result<Universe, UniverseError> {
        if n > 6 {
            return Err(UniverseError::TooManySentences(1 << n));
        }
        let sentence_name = |q: WorldSet| -> String {
            let bits: String = (0..n)
                .map(|i| if q.contains(i) { '1' } else { '0' })
                .collect();
            format!("s{bits}")
        };
        let sentences: Vec<String> = all_world_sets(n).map(sentence_name).collect();
        let names = (1..=n).map(|i| format!("w{i}")).collect();
        let satisfies = (0..n)
            .map(|w| {
                SentenceSet::from_indices(all_world_sets(n).filter(|q| q.contains(w)).map(|q| q.index()))
            })
            .collect();
        Ok(Universe::from_abstract_parts(sentences, names, satisfies))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn all(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    pub fn world_names(&self) -> &[String] {
        &self.names
    }

    pub fn world_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn is_propositional(&self) -> bool {
        matches!(self.mode, Mode::Propositional { .. })
    }

    /// True for a propositional universe that contains every valuation.
    pub fn is_full_propositional(&self) -> bool {
        match &self.mode {
            Mode::Propositional { atoms, valuations } => valuations.len() == 1 << atoms.len(),
            Mode::Abstract { .. } => false,
        }
    }

    pub fn atoms(&self) -> Option<&[String]> {
        match &self.mode {
            Mode::Propositional { atoms, .. } => Some(atoms),
            Mode::Abstract { .. } => None,
        }
    }

    pub fn sentences(&self) -> Option<&[String]> {
        match &self.mode {
            Mode::Abstract { sentences, .. } => Some(sentences),
            Mode::Propositional { .. } => None,
        }
    }

    /// The valuation of world `w` as a bit pattern (first atom most significant).
    pub fn valuation(&self, w: usize) -> Option<u32> {
        match &self.mode {
            Mode::Propositional { valuations, .. } => Some(valuations[w]),
            Mode::Abstract { .. } => None,
        }
    }

    /// Sentences satisfied by world `w` (abstract mode).
    pub fn satisfied_by(&self, w: usize) -> Option<SentenceSet> {
        match &self.mode {
            Mode::Abstract { satisfies, .. } => Some(satisfies[w]),
            Mode::Propositional { .. } => None,
        }
    }

    pub fn check_set(&self, x: WorldSet) -> Result<(), UniverseError> {
        if x.is_subset(self.all()) {
            Ok(())
        } else {
            Err(UniverseError::OutOfRange(x))
        }
    }

    /// Does world `w` satisfy sentence `s`?
    pub fn satisfies(&self, w: usize, s: &Formula) -> Result<bool, UniverseError> {
        Ok(self.mod_sentence(s)?.contains(w))
    }

    /// `Mod({s})`.
    pub fn mod_sentence(&self, s: &Formula) -> Result<WorldSet, UniverseError> {
        match &self.mode {
            Mode::Propositional { atoms, valuations } => {
                let n = atoms.len();
                if let Some(a) = s.atoms().into_iter().find(|a| !atoms.iter().any(|x| x == a)) {
                    return Err(UniverseError::NotInLanguage(a.to_owned()));
                }
                let mut out = WorldSet::EMPTY;
                for (w, &v) in valuations.iter().enumerate() {
                    let lookup = |a: &str| {
                        atoms
                            .iter()
                            .position(|x| x == a)
                            .map(|j| v >> (n - 1 - j) & 1 == 1)
                    };
                    if s.eval_with(&lookup).expect("atoms checked") {
                        out = out.with(w);
                    }
                }
                Ok(out)
            }
            Mode::Abstract { .. } => {
                let idx = self.sentence_index(s)?;
                Ok(self.mod_of_sentence_set(SentenceSet::singleton(idx)))
            }
        }
    }

    /// Position of an abstract sentence, given as a bare atom naming it.
    pub fn sentence_index(&self, s: &Formula) -> Result<usize, UniverseError> {
        match &self.mode {
            Mode::Abstract { sentences, .. } => match s {
                Formula::Atom(name) => sentences
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| UniverseError::NotInLanguage(name.clone())),
                other => Err(UniverseError::NotInLanguage(other.render())),
            },
            Mode::Propositional { .. } => Err(UniverseError::NotAbstract),
        }
    }

    /// `Mod(A)`: the worlds satisfying every sentence of `A`.
    pub fn mod_set(&self, sentences: &[Formula]) -> Result<WorldSet, UniverseError> {
        sentences.iter().try_fold(self.all(), |acc, s| {
            Ok(acc.intersection(self.mod_sentence(s)?))
        })
    }

    /// `Mod(S)` for an explicit abstract sentence set.
    pub fn mod_of_sentence_set(&self, s: SentenceSet) -> WorldSet {
        match &self.mode {
            Mode::Abstract { satisfies, .. } => WorldSet::from_indices(
                satisfies
                    .iter()
                    .enumerate()
                    .filter(|(_, sat)| s.is_subset(**sat))
                    .map(|(w, _)| w),
            ),
            Mode::Propositional { .. } => panic!("explicit sentence sets need an abstract universe"),
        }
    }

    /// `Th(X)` as an explicit sentence set (abstract mode only).
    pub fn theory_set(&self, x: WorldSet) -> SentenceSet {
        match &self.mode {
            Mode::Abstract {
                sentences,
                satisfies,
            } => x
                .iter()
                .fold(SentenceSet::full(sentences.len()), |acc, w| {
                    acc.intersection(satisfies[w])
                }),
            Mode::Propositional { .. } => panic!("explicit theories need an abstract universe"),
        }
    }

    /// `Th(X)`, represented by its model set.
    pub fn theory_of(self: &Arc<Self>, x: WorldSet) -> Result<Theory, UniverseError> {
        self.check_set(x)?;
        Ok(Theory {
            universe: Arc::clone(self),
            worlds: x,
        })
    }

    /// `Mod(Th(X))`.
    pub fn closure(&self, x: WorldSet) -> WorldSet {
        self.closure[x.index()]
    }

    pub fn is_definable(&self, x: WorldSet) -> bool {
        x.is_subset(self.all()) && self.closure(x) == x
    }

    /// True when every world set is definable.
    pub fn fully_definable(&self) -> bool {
        all_world_sets(self.len()).all(|x| self.closure(x) == x)
    }

    /// The definable world sets, in increasing numeric order.
    pub fn definable_sets(&self) -> Vec<WorldSet> {
        all_world_sets(self.len())
            .filter(|&x| self.closure(x) == x)
            .collect()
    }

    /// A formula whose models are exactly `x`: the disjunction of the
    /// characteristic conjunctions of its worlds.
    pub fn representative(&self, x: WorldSet) -> Result<Formula, UniverseError> {
        let Mode::Propositional { atoms, valuations } = &self.mode else {
            return Err(UniverseError::NotPropositional);
        };
        self.check_set(x)?;
        if x == self.all() {
            return Ok(Formula::True);
        }
        let n = atoms.len();
        Ok(Formula::disjunction(x.iter().map(|w| {
            Formula::conjunction(atoms.iter().enumerate().map(|(j, a)| {
                let lit = Formula::Atom(a.clone());
                if valuations[w] >> (n - 1 - j) & 1 == 1 {
                    lit
                } else {
                    Formula::not(lit)
                }
            }))
        })))
    }

    /// Parses a world name (abstract) or an assignment string like `p=1,q=0`.
    pub fn parse_world(&self, text: &str) -> Result<usize, UniverseError> {
        match &self.mode {
            Mode::Abstract { .. } => self
                .world_index(text)
                .ok_or_else(|| UniverseError::UnknownWorld(text.to_owned())),
            Mode::Propositional { atoms, valuations } => {
                let v = parse_valuation(atoms, text)?;
                valuations
                    .iter()
                    .position(|&x| x == v)
                    .ok_or_else(|| UniverseError::UnknownWorld(text.to_owned()))
            }
        }
    }

    pub fn world_set_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<WorldSet, UniverseError> {
        names
            .iter()
            .try_fold(WorldSet::EMPTY, |acc, n| Ok(acc.with(self.parse_world(n.as_ref())?)))
    }

    pub fn world_set_names(&self, x: WorldSet) -> Vec<String> {
        x.iter().map(|w| self.names[w].clone()).collect()
    }

    /// Names of the sentences in an explicit sentence set.
    pub fn sentence_names(&self, s: SentenceSet) -> Vec<String> {
        match &self.mode {
            Mode::Abstract { sentences, .. } => s.iter().map(|i| sentences[i].clone()).collect(),
            Mode::Propositional { .. } => Vec::new(),
        }
    }
}

fn valuation_name(atoms: &[String], v: u32) -> String {
    let n = atoms.len();
    atoms
        .iter()
        .enumerate()
        .map(|(j, a)| format!("{a}={}", v >> (n - 1 - j) & 1))
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_valuation(atoms: &[String], text: &str) -> Result<u32, UniverseError> {
    let bad = || UniverseError::BadValuation(text.to_owned());
    let n = atoms.len();
    let mut seen = 0u32;
    let mut v = 0u32;
    let parts: Vec<&str> = if text.trim().is_empty() {
        Vec::new()
    } else {
        text.split(',').collect()
    };
    for part in parts {
        let (name, value) = part.split_once('=').ok_or_else(bad)?;
        let j = atoms.iter().position(|a| a == name.trim()).ok_or_else(bad)?;
        let bit = 1u32 << (n - 1 - j);
        if seen & bit != 0 {
            return Err(bad());
        }
        seen |= bit;
        match value.trim() {
            "1" => v |= bit,
            "0" => {}
            _ => return Err(bad()),
        }
    }
    if n < 32 && seen != (1u32 << n) - 1 {
        return Err(bad());
    }
    Ok(v)
}

/// `Th(X)`: the sentences true in every world of `X`, held as `X` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    universe: Arc<Universe>,
    worlds: WorldSet,
}

impl Theory {
    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn worlds(&self) -> WorldSet {
        self.worlds
    }

    /// `Mod(Th(X))`; two theories are equal as sentence sets iff these agree.
    pub fn models(&self) -> WorldSet {
        self.universe.closure(self.worlds)
    }

    pub fn contains(&self, s: &Formula) -> Result<bool, UniverseError> {
        Ok(self.worlds.is_subset(self.universe.mod_sentence(s)?))
    }

    /// True when the theory is the whole language.
    pub fn is_everything(&self) -> bool {
        self.models() == self.universe.closure(WorldSet::EMPTY)
    }

    /// The explicit sentence set (abstract universes only).
    pub fn sentence_set(&self) -> Option<SentenceSet> {
        (!self.universe.is_propositional()).then(|| self.universe.theory_set(self.worlds))
    }

    pub fn sentence_names(&self) -> Option<Vec<String>> {
        self.sentence_set().map(|s| self.universe.sentence_names(s))
    }

    pub fn same_sentences(&self, other: &Theory) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) && self.models() == other.models()
    }
}
