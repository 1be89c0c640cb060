//! Qualitative measures: strict relations `X > Y` over world sets read as
//! "X is an order of magnitude larger than Y".
//!
//! Measures live on fully definable universes, where every world set is a
//! possible premise. [`measure_from_choice`] and [`choice_from_measure`]
//! convert between CCLM choice functions and measures satisfying the five
//! basic properties; the conversions are conditional and validate their
//! inputs.
//!
//! The union properties are checked for pairs. On a finite universe a family
//! of sets is a finite union of pairs, so the binary form implies the
//! general one by induction on the family size.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::bits::{all_world_sets, WorldSet};
use crate::choice::{ChoiceFunction, ChoiceProperty, UnknownName};
use crate::formula::Formula;
use crate::universe::{Universe, UniverseError};
use crate::verdict::{PropertyVerdict, Witness};

/// Largest universe a measure may live on (the matrix has `4^n` cells).
pub const MAX_MEASURE_WORLDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("measures need a fully definable universe")]
    NotFullyDefinable,
    #[error("universe has {0} worlds; measures support at most {MAX_MEASURE_WORLDS}")]
    TooLarge(usize),
    #[error("{0:?} > {0:?} violates irreflexivity")]
    Reflexive(WorldSet),
    #[error("choice function fails {}", .0.property)]
    NotCclm(PropertyVerdict),
    #[error("measure fails {}", .0.property)]
    MissingProperty(PropertyVerdict),
    #[error("world {world} is not a member of {set:?}")]
    NotMember { world: usize, set: WorldSet },
    #[error("measure and choice function live on different universes")]
    UniverseMismatch,
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureProperty {
    StrictOrder,
    RespectsInclusion,
    NegligibleUnion,
    LeftDifference,
    UnionBound,
    Modularity,
}

impl MeasureProperty {
    pub const ALL: [MeasureProperty; 6] = [
        MeasureProperty::StrictOrder,
        MeasureProperty::RespectsInclusion,
        MeasureProperty::NegligibleUnion,
        MeasureProperty::LeftDifference,
        MeasureProperty::UnionBound,
        MeasureProperty::Modularity,
    ];

    /// The properties equivalent to Contraction, Coherence and Local Monotonicity.
    pub const BASIC: [MeasureProperty; 5] = [
        MeasureProperty::StrictOrder,
        MeasureProperty::RespectsInclusion,
        MeasureProperty::NegligibleUnion,
        MeasureProperty::LeftDifference,
        MeasureProperty::UnionBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureProperty::StrictOrder => "strict_order",
            MeasureProperty::RespectsInclusion => "respects_inclusion",
            MeasureProperty::NegligibleUnion => "negligible_union",
            MeasureProperty::LeftDifference => "left_difference",
            MeasureProperty::UnionBound => "union_bound",
            MeasureProperty::Modularity => "modularity",
        }
    }
}

impl fmt::Display for MeasureProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureProperty {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MeasureProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

/// An irreflexive relation over all world sets of a fully definable universe.
#[derive(Clone, PartialEq, Eq)]
pub struct QualMeasure {
    universe: Arc<Universe>,
    size: usize,
    rel: Vec<bool>,
}

impl fmt::Debug for QualMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.pairs().map(|(x, y)| format!("{x:?} > {y:?}")))
            .finish()
    }
}

fn check_universe(universe: &Universe) -> Result<(), MeasureError> {
    if universe.len() > MAX_MEASURE_WORLDS {
        return Err(MeasureError::TooLarge(universe.len()));
    }
    if !universe.fully_definable() {
        return Err(MeasureError::NotFullyDefinable);
    }
    Ok(())
}

impl QualMeasure {
    pub fn from_fn<F>(universe: &Arc<Universe>, mut greater: F) -> Result<QualMeasure, MeasureError>
    where
        F: FnMut(WorldSet, WorldSet) -> bool,
    {
        check_universe(universe)?;
        let size = 1usize << universe.len();
        let mut rel = vec![false; size * size];
        for x in all_world_sets(universe.len()) {
            for y in all_world_sets(universe.len()) {
                if greater(x, y) {
                    if x == y {
                        return Err(MeasureError::Reflexive(x));
                    }
                    rel[x.index() * size + y.index()] = true;
                }
            }
        }
        Ok(QualMeasure {
            universe: Arc::clone(universe),
            size,
            rel,
        })
    }

    /// The relation holding exactly on the listed pairs.
    pub fn from_pairs(
        universe: &Arc<Universe>,
        pairs: &[(WorldSet, WorldSet)],
    ) -> Result<QualMeasure, MeasureError> {
        for &(x, y) in pairs {
            universe.check_set(x)?;
            universe.check_set(y)?;
        }
        QualMeasure::from_fn(universe, |x, y| pairs.contains(&(x, y)))
    }

    /// `X > Y` iff `Y` is empty and `X` is not.
    pub fn tarski(universe: &Arc<Universe>) -> Result<QualMeasure, MeasureError> {
        QualMeasure::from_fn(universe, |x, y| y.is_empty() && !x.is_empty())
    }

    pub fn empty(universe: &Arc<Universe>) -> Result<QualMeasure, MeasureError> {
        QualMeasure::from_fn(universe, |_, _| false)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    /// `X > Y`; sets outside the universe are never related.
    #[inline]
    pub fn greater(&self, x: WorldSet, y: WorldSet) -> bool {
        let (i, j) = (x.index(), y.index());
        i < self.size && j < self.size && self.rel[i * self.size + j]
    }

    /// The true entries, in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (WorldSet, WorldSet)> + '_ {
        let n = self.universe.len();
        all_world_sets(n).flat_map(move |x| {
            all_world_sets(n)
                .filter(move |&y| self.greater(x, y))
                .map(move |y| (x, y))
        })
    }

    /// `x` is heavy in `X` iff `X ≯ {x}`.
    pub fn heavy(&self, x: usize, set: WorldSet) -> Result<bool, MeasureError> {
        if !set.contains(x) {
            return Err(MeasureError::NotMember { world: x, set });
        }
        Ok(!self.greater(set, WorldSet::singleton(x)))
    }

    fn heavy_elements(&self, set: WorldSet) -> WorldSet {
        WorldSet::from_indices(set.iter().filter(|&x| !self.greater(set, WorldSet::singleton(x))))
    }

    fn sets(&self) -> Vec<WorldSet> {
        all_world_sets(self.universe.len()).collect()
    }

    pub fn check(&self, prop: MeasureProperty) -> PropertyVerdict {
        let sets = self.sets();
        let g = |x: WorldSet, y: WorldSet| self.greater(x, y);
        let e = WorldSet::EMPTY;
        let found = match prop {
            MeasureProperty::StrictOrder => sets
                .iter()
                .find(|&&x| g(x, x))
                .map(|&x| Witness::sets(&[("X", x), ("Y", x), ("Z", x)]))
                .or_else(|| {
                    triples(&sets)
                        .find(|&(x, y, z)| g(x, y) && g(y, z) && !g(x, z))
                        .map(|(x, y, z)| Witness::sets(&[("X", x), ("Y", y), ("Z", z)]))
                }),
            // W ⊇ X > Y ⊇ Z ⇒ W > Z reduces to its two one-sided instances.
            MeasureProperty::RespectsInclusion => triples(&sets)
                .find_map(|(a, b, c)| {
                    if b.is_subset(a) && g(b, c) && !g(a, c) {
                        Some(Witness::sets(&[("W", a), ("X", b), ("Y", c), ("Z", c)]))
                    } else if c.is_subset(b) && g(a, b) && !g(a, c) {
                        Some(Witness::sets(&[("W", a), ("X", a), ("Y", b), ("Z", c)]))
                    } else {
                        None
                    }
                }),
            MeasureProperty::NegligibleUnion => pairs(&sets)
                .find(|&(x, y)| !g(x, e) && !g(y, e) && g(x.union(y), e))
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            MeasureProperty::LeftDifference => pairs(&sets)
                .find(|&(x, y)| g(x.union(y), y) && !g(x, y))
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            MeasureProperty::UnionBound => triples(&sets)
                .find(|&(x, y, z)| g(x, y) && g(x, z) && !g(x, y.union(z)))
                .map(|(x, y, z)| Witness::sets(&[("X", x), ("Y", y), ("Z", z)])),
            MeasureProperty::Modularity => triples(&sets)
                .find(|&(x, y, z)| g(x, y) && !g(x, z) && !g(z, y))
                .map(|(x, y, z)| Witness::sets(&[("X", x), ("Y", y), ("Z", z)])),
        };
        PropertyVerdict::from_search(prop.name(), found)
    }

    pub fn satisfies(&self, prop: MeasureProperty) -> bool {
        self.check(prop).holds
    }

    /// Re-evaluates the defining condition of `prop` at a witness.
    pub fn violates(&self, prop: MeasureProperty, w: &Witness) -> bool {
        let g = |x: WorldSet, y: WorldSet| self.greater(x, y);
        let get = |n: &str| w.get(n);
        let e = WorldSet::EMPTY;
        match prop {
            MeasureProperty::StrictOrder => match (get("X"), get("Y"), get("Z")) {
                (Some(x), Some(y), Some(z)) => g(x, x) || (g(x, y) && g(y, z) && !g(x, z)),
                _ => false,
            },
            MeasureProperty::RespectsInclusion => match (get("W"), get("X"), get("Y"), get("Z")) {
                (Some(a), Some(x), Some(y), Some(z)) => {
                    x.is_subset(a) && g(x, y) && z.is_subset(y) && !g(a, z)
                }
                _ => false,
            },
            MeasureProperty::NegligibleUnion => match (get("X"), get("Y")) {
                (Some(x), Some(y)) => !g(x, e) && !g(y, e) && g(x.union(y), e),
                _ => false,
            },
            MeasureProperty::LeftDifference => match (get("X"), get("Y")) {
                (Some(x), Some(y)) => g(x.union(y), y) && !g(x, y),
                _ => false,
            },
            MeasureProperty::UnionBound => match (get("X"), get("Y"), get("Z")) {
                (Some(x), Some(y), Some(z)) => g(x, y) && g(x, z) && !g(x, y.union(z)),
                _ => false,
            },
            MeasureProperty::Modularity => match (get("X"), get("Y"), get("Z")) {
                (Some(x), Some(y), Some(z)) => g(x, y) && !g(x, z) && !g(z, y),
                _ => false,
            },
        }
    }

    /// The measure-side form of Expansion: `X ∪ Y > Z` implies `X > Z` or `Y > Z`.
    pub fn check_expansion_transfer(&self) -> PropertyVerdict {
        let sets = self.sets();
        let found = triples(&sets)
            .find(|&(x, y, z)| {
                self.greater(x.union(y), z) && !self.greater(x, z) && !self.greater(y, z)
            })
            .map(|(x, y, z)| Witness::sets(&[("X", x), ("Y", y), ("Z", z)]));
        PropertyVerdict::from_search("expansion_transfer", found)
    }

    /// Measure-based entailment on world sets, where `X = Mod(A)` and `P = Mod(a)`:
    /// `X ∩ P > X − P`, or `X ≯ ∅`.
    pub fn entails_sets(&self, premises: WorldSet, query: WorldSet) -> bool {
        self.greater(premises.intersection(query), premises.difference(query))
            || !self.greater(premises, WorldSet::EMPTY)
    }
}

fn pairs(sets: &[WorldSet]) -> impl Iterator<Item = (WorldSet, WorldSet)> + '_ {
    sets.iter().flat_map(move |&x| sets.iter().map(move |&y| (x, y)))
}

fn triples(sets: &[WorldSet]) -> impl Iterator<Item = (WorldSet, WorldSet, WorldSet)> + '_ {
    sets.iter().flat_map(move |&x| {
        sets.iter()
            .flat_map(move |&y| sets.iter().map(move |&z| (x, y, z)))
    })
}

/// `a ∈ C(A)` for the operator induced by a measure.
pub fn consequence_by_measure(
    m: &QualMeasure,
    premises: &[Formula],
    query: &Formula,
) -> Result<bool, MeasureError> {
    let x = m.universe.mod_set(premises)?;
    let p = m.universe.mod_sentence(query)?;
    Ok(m.entails_sets(x, p))
}

/// `X > Y` iff `f(X) ≠ ∅` and `Y ∩ f(X ∪ Y) = ∅`. Requires a CCLM `f`.
pub fn measure_from_choice(f: &ChoiceFunction) -> Result<QualMeasure, MeasureError> {
    check_universe(f.universe())?;
    for p in ChoiceProperty::CCLM {
        let v = f.check(p);
        if !v.holds {
            return Err(MeasureError::NotCclm(v));
        }
    }
    QualMeasure::from_fn(f.universe(), |x, y| {
        !f.at(x).is_empty() && !y.intersects(f.at(x.union(y)))
    })
}

/// `f(X)` = the heavy elements of `X`. Requires the five basic properties.
pub fn choice_from_measure(m: &QualMeasure) -> Result<ChoiceFunction, MeasureError> {
    for p in MeasureProperty::BASIC {
        let v = m.check(p);
        if !v.holds {
            return Err(MeasureError::MissingProperty(v));
        }
    }
    Ok(ChoiceFunction::from_fn(&m.universe, |x| m.heavy_elements(x)).expect("heavy elements contract"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choice::enumerate_cclm;

    fn u(n: usize) -> Arc<Universe> {
        Arc::new(Universe::discrete(n).unwrap())
    }

    fn ws(ix: &[usize]) -> WorldSet {
        WorldSet::from_indices(ix.iter().copied())
    }

    #[test]
    fn tarski_basics() {
        let u = u(2);
        let t = QualMeasure::tarski(&u).unwrap();
        assert!(t.greater(ws(&[0]), WorldSet::EMPTY));
        assert!(!t.greater(ws(&[0]), ws(&[0])));
        for p in MeasureProperty::ALL {
            assert!(t.satisfies(p), "{p}");
        }
        assert!(t.heavy(0, ws(&[0, 1])).unwrap());
        assert!(t.heavy(1, ws(&[0])).is_err());
    }

    #[test]
    fn two_cycle_is_not_strict_order() {
        let u = u(2);
        let m = QualMeasure::from_pairs(&u, &[(ws(&[0]), ws(&[1])), (ws(&[1]), ws(&[0]))]).unwrap();
        let v = m.check(MeasureProperty::StrictOrder);
        assert!(!v.holds);
        assert!(m.violates(MeasureProperty::StrictOrder, &v.witness.unwrap()));
    }

    #[test]
    fn reflexive_pairs_rejected() {
        let u = u(1);
        assert_eq!(
            QualMeasure::from_pairs(&u, &[(ws(&[0]), ws(&[0]))]),
            Err(MeasureError::Reflexive(ws(&[0])))
        );
    }

    #[test]
    fn identity_gives_tarski_and_empty_gives_empty() {
        let u = u(3);
        let id = ChoiceFunction::identity(&u);
        assert_eq!(measure_from_choice(&id).unwrap(), QualMeasure::tarski(&u).unwrap());
        let none = ChoiceFunction::nothing(&u);
        assert_eq!(measure_from_choice(&none).unwrap(), QualMeasure::empty(&u).unwrap());
        assert_eq!(choice_from_measure(&QualMeasure::empty(&u).unwrap()).unwrap(), id);
        assert_eq!(choice_from_measure(&QualMeasure::tarski(&u).unwrap()).unwrap(), id);
    }

    #[test]
    fn non_cclm_rejected() {
        let u = u(2);
        let f = ChoiceFunction::from_fn(&u, |x| if x.len() >= 2 { x } else { WorldSet::EMPTY }).unwrap();
        assert!(matches!(measure_from_choice(&f), Err(MeasureError::NotCclm(_))));
    }

    #[test]
    fn abstract_universe_rejected() {
        let u = Arc::new(
            Universe::abstract_universe(&["a"], &[("w1", vec!["a"]), ("w2", vec!["a"])]).unwrap(),
        );
        assert_eq!(QualMeasure::empty(&u), Err(MeasureError::NotFullyDefinable));
    }

    #[test]
    fn heavy_characterization_small() {
        let u = u(2);
        for f in enumerate_cclm(&u).unwrap() {
            let m = measure_from_choice(&f).unwrap();
            for (x, fx) in f.entries() {
                let heavy = m.heavy_elements(x);
                if fx.is_empty() {
                    assert_eq!(heavy, x);
                } else {
                    assert_eq!(heavy, fx);
                }
            }
        }
    }
}
