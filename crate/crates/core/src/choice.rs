//! Choice functions on the definable world sets of a universe.
//!
//! A [`ChoiceFunction`] maps each definable set `X` to a subset `f(X) ⊆ X` of
//! preferred worlds. Constructors cover explicit tables, minimal elements of
//! a strict partial order, unions of minima over a family of orders, and
//! grade-based ranking. Every property studied for such functions can be
//! checked exhaustively, returning the first violation in canonical order
//! (sets compared by their bit pattern, `X` before `Y` before `Z`).
//!
//! Infinitary properties are checked in their binary form, which is enough on
//! a finite universe: any finite family is generated by repeated pairwise
//! unions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::bits::{all_world_sets, WorldSet};
use crate::universe::{Universe, UniverseError};
use crate::verdict::{PropertyVerdict, Witness};

/// Largest universe accepted by the exhaustive enumerators.
pub const MAX_ENUMERATION_WORLDS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChoiceError {
    #[error("{0:?} is not a definable set of this universe")]
    NotDefinable(WorldSet),
    #[error("f({set:?}) = {chosen:?} is not a subset of its argument")]
    NotContraction { set: WorldSet, chosen: WorldSet },
    #[error("no value given for the definable set {0:?}")]
    Missing(WorldSet),
    #[error("value for {0:?} given twice")]
    Duplicate(WorldSet),
    #[error("relation is not a strict partial order: {0}")]
    NotStrictOrder(String),
    #[error("order family is empty")]
    EmptyFamily,
    #[error("expected {expected} grades, got {got}")]
    GradeCount { expected: usize, got: usize },
    #[error("universe has {0} worlds; exhaustive enumeration supports at most {MAX_ENUMERATION_WORLDS}")]
    TooLarge(usize),
    #[error(transparent)]
    Universe(#[from] UniverseError),
}

/// The choice-function properties that can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChoiceProperty {
    Contraction,
    Coherence,
    LocalMonotonicity,
    Expansion,
    Arrow,
    PathIndependence,
    DefinabilityPreservation,
}

impl ChoiceProperty {
    pub const ALL: [ChoiceProperty; 7] = [
        ChoiceProperty::Contraction,
        ChoiceProperty::Coherence,
        ChoiceProperty::LocalMonotonicity,
        ChoiceProperty::Expansion,
        ChoiceProperty::Arrow,
        ChoiceProperty::PathIndependence,
        ChoiceProperty::DefinabilityPreservation,
    ];

    /// Contraction, Coherence and Local Monotonicity.
    pub const CCLM: [ChoiceProperty; 3] = [
        ChoiceProperty::Contraction,
        ChoiceProperty::Coherence,
        ChoiceProperty::LocalMonotonicity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChoiceProperty::Contraction => "contraction",
            ChoiceProperty::Coherence => "coherence",
            ChoiceProperty::LocalMonotonicity => "local_monotonicity",
            ChoiceProperty::Expansion => "expansion",
            ChoiceProperty::Arrow => "arrow",
            ChoiceProperty::PathIndependence => "path_independence",
            ChoiceProperty::DefinabilityPreservation => "definability_preservation",
        }
    }
}

impl fmt::Display for ChoiceProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown property `{0}`")]
pub struct UnknownName(pub String);

impl FromStr for ChoiceProperty {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ChoiceProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| UnknownName(s.to_owned()))
    }
}

/// A strict partial order on world indices; `less(a, b)` reads "a is
/// preferred to b".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictOrder {
    n: usize,
    less: Vec<bool>,
}

impl StrictOrder {
    /// Validates irreflexivity and transitivity of the given pairs.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<StrictOrder, ChoiceError> {
        let mut less = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(ChoiceError::NotStrictOrder(format!(
                    "pair ({a}, {b}) is out of range"
                )));
            }
            less[a * n + b] = true;
        }
        let order = StrictOrder { n, less };
        order.validate()?;
        Ok(order)
    }

    /// The order in which `ranking[0] < ranking[1] < ...`.
    pub fn chain(n: usize, ranking: &[usize]) -> Result<StrictOrder, ChoiceError> {
        let pairs: Vec<(usize, usize)> = ranking
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| ranking[i + 1..].iter().map(move |&b| (a, b)))
            .collect();
        StrictOrder::new(n, &pairs)
    }

    /// Transitive closure of arbitrary pairs, failing if a cycle appears.
    pub fn closure_of(n: usize, pairs: &[(usize, usize)]) -> Result<StrictOrder, ChoiceError> {
        let mut less = vec![false; n * n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(ChoiceError::NotStrictOrder(format!(
                    "pair ({a}, {b}) is out of range"
                )));
            }
            less[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i * n + k] {
                    for j in 0..n {
                        if less[k * n + j] {
                            less[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let order = StrictOrder { n, less };
        order.validate()?;
        Ok(order)
    }

    fn validate(&self) -> Result<(), ChoiceError> {
        let n = self.n;
        for a in 0..n {
            if self.less(a, a) {
                return Err(ChoiceError::NotStrictOrder(format!("{a} < {a}")));
            }
            for b in 0..n {
                for c in 0..n {
                    if self.less(a, b) && self.less(b, c) && !self.less(a, c) {
                        return Err(ChoiceError::NotStrictOrder(format!(
                            "{a} < {b} < {c} but not {a} < {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a * self.n + b]
    }

    /// Elements of `x` with no strictly preferred element in `x`.
    pub fn minima(&self, x: WorldSet) -> WorldSet {
        WorldSet::from_indices(x.iter().filter(|&b| !x.iter().any(|a| self.less(a, b))))
    }
}

/// A choice function on the definable sets of a universe.
#[derive(Clone, PartialEq, Eq)]
pub struct ChoiceFunction {
    universe: Arc<Universe>,
    /// Indexed by the bit pattern of the argument; non-definable slots are empty.
    table: Vec<WorldSet>,
}

impl fmt::Debug for ChoiceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries()).finish()
    }
}

impl ChoiceFunction {
    /// Tabulates `choose` on every definable set, enforcing Contraction.
    pub fn from_fn<F>(universe: &Arc<Universe>, mut choose: F) -> Result<ChoiceFunction, ChoiceError>
    where
        F: FnMut(WorldSet) -> WorldSet,
    {
        let mut table = vec![WorldSet::EMPTY; 1 << universe.len()];
        for x in universe.definable_sets() {
            let chosen = choose(x);
            if !chosen.is_subset(x) {
                return Err(ChoiceError::NotContraction { set: x, chosen });
            }
            table[x.index()] = chosen;
        }
        Ok(ChoiceFunction {
            universe: Arc::clone(universe),
            table,
        })
    }

    /// Builds from explicit `(X, f(X))` entries, which must cover every
    /// definable set exactly once.
    pub fn from_entries<I>(universe: &Arc<Universe>, entries: I) -> Result<ChoiceFunction, ChoiceError>
    where
        I: IntoIterator<Item = (WorldSet, WorldSet)>,
    {
        let mut slots: Vec<Option<WorldSet>> = vec![None; 1 << universe.len()];
        for (x, fx) in entries {
            universe.check_set(x)?;
            if !universe.is_definable(x) {
                return Err(ChoiceError::NotDefinable(x));
            }
            if slots[x.index()].replace(fx).is_some() {
                return Err(ChoiceError::Duplicate(x));
            }
        }
        if let Some(x) = universe
            .definable_sets()
            .into_iter()
            .find(|x| slots[x.index()].is_none())
        {
            return Err(ChoiceError::Missing(x));
        }
        ChoiceFunction::from_fn(universe, |x| slots[x.index()].unwrap())
    }

    pub fn identity(universe: &Arc<Universe>) -> ChoiceFunction {
        ChoiceFunction::from_fn(universe, |x| x).expect("identity contracts")
    }

    /// The function choosing nothing anywhere.
    pub fn nothing(universe: &Arc<Universe>) -> ChoiceFunction {
        ChoiceFunction::from_fn(universe, |_| WorldSet::EMPTY).expect("empty contracts")
    }

    /// Minimal elements under a strict partial order.
    pub fn from_order(universe: &Arc<Universe>, order: &StrictOrder) -> Result<ChoiceFunction, ChoiceError> {
        ChoiceFunction::from_order_family(universe, std::slice::from_ref(order))
    }

    /// Worlds minimal under at least one order of the family.
    pub fn from_order_family(
        universe: &Arc<Universe>,
        orders: &[StrictOrder],
    ) -> Result<ChoiceFunction, ChoiceError> {
        if orders.is_empty() {
            return Err(ChoiceError::EmptyFamily);
        }
        if let Some(o) = orders.iter().find(|o| o.len() != universe.len()) {
            return Err(ChoiceError::NotStrictOrder(format!(
                "order on {} elements for a universe of {}",
                o.len(),
                universe.len()
            )));
        }
        ChoiceFunction::from_fn(universe, |x| {
            orders
                .iter()
                .fold(WorldSet::EMPTY, |acc, o| acc.union(o.minima(x)))
        })
    }

    /// Worlds of minimal grade; lower grades are preferred.
    pub fn from_rank(universe: &Arc<Universe>, grades: &[u32]) -> Result<ChoiceFunction, ChoiceError> {
        if grades.len() != universe.len() {
            return Err(ChoiceError::GradeCount {
                expected: universe.len(),
                got: grades.len(),
            });
        }
        ChoiceFunction::from_fn(universe, |x| match x.iter().map(|w| grades[w]).min() {
            None => WorldSet::EMPTY,
            Some(best) => WorldSet::from_indices(x.iter().filter(|&w| grades[w] == best)),
        })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn apply(&self, x: WorldSet) -> Result<WorldSet, ChoiceError> {
        self.universe.check_set(x)?;
        if !self.universe.is_definable(x) {
            return Err(ChoiceError::NotDefinable(x));
        }
        Ok(self.table[x.index()])
    }

    /// Lookup for a set already known to be definable.
    #[inline]
    pub(crate) fn at(&self, x: WorldSet) -> WorldSet {
        debug_assert!(self.universe.is_definable(x));
        self.table[x.index()]
    }

    /// `(X, f(X))` over the definable sets, in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (WorldSet, WorldSet)> + '_ {
        self.universe
            .definable_sets()
            .into_iter()
            .map(move |x| (x, self.table[x.index()]))
    }

    /// `X ∩ f(Mod(Th(X)))`, defined on every set including non-definable ones.
    pub fn extended_apply(&self, x: WorldSet) -> WorldSet {
        x.intersection(self.table[self.universe.closure(x).index()])
    }

    pub fn check(&self, prop: ChoiceProperty) -> PropertyVerdict {
        let defs = self.universe.definable_sets();
        let found = match prop {
            ChoiceProperty::Contraction => defs
                .iter()
                .find(|&&x| !self.at(x).is_subset(x))
                .map(|&x| Witness::sets(&[("X", x)])),
            ChoiceProperty::Coherence => pairs(&defs)
                .find(|&(x, y)| x.is_subset(y) && !x.intersection(self.at(y)).is_subset(self.at(x)))
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            ChoiceProperty::LocalMonotonicity => pairs(&defs)
                .find(|&(x, y)| {
                    self.at(x).is_subset(y) && y.is_subset(x) && !self.at(y).is_subset(self.at(x))
                })
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            ChoiceProperty::Expansion => pairs(&defs)
                .find(|&(x, y)| {
                    let u = x.union(y);
                    self.universe.is_definable(u)
                        && !self.at(x).intersection(self.at(y)).is_subset(self.at(u))
                })
                .map(|(x, y)| {
                    let lost = self.at(x).intersection(self.at(y)).difference(self.at(x.union(y)));
                    Witness {
                        world: lost.iter().next(),
                        ..Witness::sets(&[("X", x), ("Y", y)])
                    }
                }),
            ChoiceProperty::Arrow => pairs(&defs)
                .find(|&(x, y)| {
                    x.is_subset(y) && x.intersects(self.at(y)) && !self.at(x).is_subset(self.at(y))
                })
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            ChoiceProperty::PathIndependence => pairs(&defs)
                .find(|&(x, y)| {
                    let u = x.union(y);
                    let v = self.at(x).union(y);
                    self.universe.is_definable(u)
                        && self.universe.is_definable(v)
                        && self.at(u) != self.at(v)
                })
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            ChoiceProperty::DefinabilityPreservation => defs
                .iter()
                .find(|&&x| !self.universe.is_definable(self.at(x)))
                .map(|&x| Witness::sets(&[("X", x)])),
        };
        PropertyVerdict::from_search(prop.name(), found)
    }

    pub fn satisfies(&self, prop: ChoiceProperty) -> bool {
        self.check(prop).holds
    }

    /// Contraction, Coherence and Local Monotonicity all hold.
    pub fn is_cclm(&self) -> bool {
        ChoiceProperty::CCLM.into_iter().all(|p| self.satisfies(p))
    }

    /// Re-evaluates the defining condition of `prop` at a witness; true when
    /// the witness is a genuine violation.
    pub fn violates(&self, prop: ChoiceProperty, w: &Witness) -> bool {
        let x = match w.get("X") {
            Some(x) if self.universe.is_definable(x) => x,
            _ => return false,
        };
        let y = w.get("Y").filter(|&y| self.universe.is_definable(y));
        let fx = self.at(x);
        match (prop, y) {
            (ChoiceProperty::Contraction, _) => !fx.is_subset(x),
            (ChoiceProperty::DefinabilityPreservation, _) => !self.universe.is_definable(fx),
            (_, None) => false,
            (ChoiceProperty::Coherence, Some(y)) => {
                x.is_subset(y) && !x.intersection(self.at(y)).is_subset(fx)
            }
            (ChoiceProperty::LocalMonotonicity, Some(y)) => {
                fx.is_subset(y) && y.is_subset(x) && !self.at(y).is_subset(fx)
            }
            (ChoiceProperty::Expansion, Some(y)) => {
                let u = x.union(y);
                self.universe.is_definable(u) && !fx.intersection(self.at(y)).is_subset(self.at(u))
            }
            (ChoiceProperty::Arrow, Some(y)) => {
                x.is_subset(y) && x.intersects(self.at(y)) && !fx.is_subset(self.at(y))
            }
            (ChoiceProperty::PathIndependence, Some(y)) => {
                let u = x.union(y);
                let v = fx.union(y);
                self.universe.is_definable(u) && self.universe.is_definable(v) && self.at(u) != self.at(v)
            }
        }
    }

    /// Checks Contraction, Coherence or Local Monotonicity of the extension
    /// [`ChoiceFunction::extended_apply`] over *all* world sets. Other
    /// properties are checked as for [`ChoiceFunction::check`].
    pub fn check_extension(&self, prop: ChoiceProperty) -> PropertyVerdict {
        let all: Vec<WorldSet> = all_world_sets(self.universe.len()).collect();
        let g = |x: WorldSet| self.extended_apply(x);
        let found = match prop {
            ChoiceProperty::Contraction => all
                .iter()
                .find(|&&x| !g(x).is_subset(x))
                .map(|&x| Witness::sets(&[("X", x)])),
            ChoiceProperty::Coherence => pairs(&all)
                .find(|&(x, y)| x.is_subset(y) && !x.intersection(g(y)).is_subset(g(x)))
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            ChoiceProperty::LocalMonotonicity => pairs(&all)
                .find(|&(x, y)| g(x).is_subset(y) && y.is_subset(x) && !g(y).is_subset(g(x)))
                .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)])),
            other => return self.check(other),
        };
        PropertyVerdict::from_search(prop.name(), found)
    }

    /// The weakened Local Monotonicity the extension keeps:
    /// `f(Mod(Th(X))) ⊆ Y ⊆ X` implies `f(Y) ⊆ f(X)`, for all sets.
    pub fn check_extension_weak_local_monotonicity(&self) -> PropertyVerdict {
        let all: Vec<WorldSet> = all_world_sets(self.universe.len()).collect();
        let g = |x: WorldSet| self.extended_apply(x);
        let found = pairs(&all)
            .find(|&(x, y)| {
                self.table[self.universe.closure(x).index()].is_subset(y)
                    && y.is_subset(x)
                    && !g(y).is_subset(g(x))
            })
            .map(|(x, y)| Witness::sets(&[("X", x), ("Y", y)]));
        PropertyVerdict::from_search("extension_weak_local_monotonicity", found)
    }
}

/// Node budget for [`cclm_extension`].
pub const EXTENSION_SEARCH_BUDGET: usize = 1_000_000;

/// A Contraction/Coherence/Local Monotonicity function on every subset of
/// `target` (a fully definable universe with the same worlds) that agrees
/// with `f` on `f`'s definable sets.
///
/// `X ∩ f(Mod(Th(X)))` is tried first for every set; when that extension
/// breaks Local Monotonicity a depth-first search over the remaining
/// candidates takes over. `None` when no extension exists or the search
/// budget runs out.
pub fn cclm_extension(f: &ChoiceFunction, target: &Arc<Universe>) -> Option<ChoiceFunction> {
    let n = f.universe.len();
    if target.len() != n || !target.fully_definable() {
        return None;
    }
    let direct = ChoiceFunction::from_fn(target, |x| f.extended_apply(x)).ok()?;
    if direct.is_cclm() {
        return Some(direct);
    }
    let mut order: Vec<WorldSet> = all_world_sets(n).collect();
    order.sort_by_key(|x| (x.len(), x.bits()));
    let mut table: Vec<Option<WorldSet>> = vec![None; 1 << n];
    for x in f.universe.definable_sets() {
        table[x.index()] = Some(f.at(x));
    }
    let free: Vec<WorldSet> = order
        .into_iter()
        .filter(|x| table[x.index()].is_none())
        .collect();
    let mut budget = EXTENSION_SEARCH_BUDGET;
    if !extend(f, &free, 0, &mut table, &mut budget) {
        return None;
    }
    ChoiceFunction::from_fn(target, |x| table[x.index()].expect("search fills every set")).ok()
}

fn compatible(x: WorldSet, fx: WorldSet, y: WorldSet, fy: WorldSet) -> bool {
    // y ⊆ x: Coherence and Local Monotonicity between the two entries
    !(y.is_subset(x) && (!y.intersection(fx).is_subset(fy) || (fx.is_subset(y) && !fy.is_subset(fx))))
}

fn extend(
    f: &ChoiceFunction,
    free: &[WorldSet],
    i: usize,
    table: &mut [Option<WorldSet>],
    budget: &mut usize,
) -> bool {
    if i == free.len() {
        return true;
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let x = free[i];
    let first = f.extended_apply(x);
    let candidates = std::iter::once(first).chain(x.subsets().filter(move |&c| c != first));
    for c in candidates {
        let ok = table.iter().enumerate().all(|(j, fy)| match fy {
            Some(fy) => {
                let y = WorldSet(j as u64);
                compatible(x, c, y, *fy) && compatible(y, *fy, x, c)
            }
            None => true,
        }) && compatible(x, c, x, c);
        if ok {
            table[x.index()] = Some(c);
            if extend(f, free, i + 1, table, budget) {
                return true;
            }
            table[x.index()] = None;
        }
    }
    false
}

fn pairs(sets: &[WorldSet]) -> impl Iterator<Item = (WorldSet, WorldSet)> + '_ {
    sets.iter().flat_map(move |&x| sets.iter().map(move |&y| (x, y)))
}

/// Every contraction function on the definable sets of a universe of at most
/// [`MAX_ENUMERATION_WORLDS`] worlds, in canonical order: one digit per
/// definable set (increasing), candidates per digit in increasing order, the
/// last digit varying fastest.
pub fn enumerate_contractions(
    universe: &Arc<Universe>,
) -> Result<impl Iterator<Item = ChoiceFunction>, ChoiceError> {
    if universe.len() > MAX_ENUMERATION_WORLDS {
        return Err(ChoiceError::TooLarge(universe.len()));
    }
    let defs = universe.definable_sets();
    let candidates: Vec<Vec<WorldSet>> = defs.iter().map(|x| x.subsets().collect()).collect();
    let mut digits = vec![0usize; defs.len()];
    let mut done = false;
    let universe = Arc::clone(universe);
    Ok(std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut table = vec![WorldSet::EMPTY; 1 << universe.len()];
        for (i, x) in defs.iter().enumerate() {
            table[x.index()] = candidates[i][digits[i]];
        }
        let f = ChoiceFunction {
            universe: Arc::clone(&universe),
            table,
        };
        // advance the odometer
        done = true;
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < candidates[i].len() {
                done = false;
                break;
            }
            digits[i] = 0;
        }
        Some(f)
    }))
}

/// The choice functions satisfying Contraction, Coherence and Local
/// Monotonicity, in the canonical order of [`enumerate_contractions`].
pub fn enumerate_cclm(
    universe: &Arc<Universe>,
) -> Result<impl Iterator<Item = ChoiceFunction>, ChoiceError> {
    Ok(enumerate_contractions(universe)?.filter(ChoiceFunction::is_cclm))
}

/// Every ranked choice function: grades range over `0..n`, which realizes
/// every weak order of the worlds. Duplicates are skipped.
pub fn enumerate_ranked(
    universe: &Arc<Universe>,
) -> Result<impl Iterator<Item = ChoiceFunction>, ChoiceError> {
    let n = universe.len();
    if n > 6 {
        return Err(ChoiceError::TooLarge(n));
    }
    let base = n.max(1) as u64;
    let total = base.pow(n as u32);
    let mut seen: Vec<ChoiceFunction> = Vec::new();
    let universe = Arc::clone(universe);
    Ok((0..total).filter_map(move |code| {
        let grades: Vec<u32> = (0..n)
            .map(|i| (code / base.pow((n - 1 - i) as u32) % base) as u32)
            .collect();
        let f = ChoiceFunction::from_rank(&universe, &grades).expect("grade count matches");
        if seen.contains(&f) {
            None
        } else {
            seen.push(f.clone());
            Some(f)
        }
    }))
}

/// A random strict partial order: random pairs along a random linear
/// extension, transitively closed.
pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> StrictOrder {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let density: f64 = rng.gen_range(0.0..=1.0);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    StrictOrder::closure_of(n, &pairs).expect("pairs follow a linear order")
}

/// A random choice function satisfying Contraction, Coherence and Local
/// Monotonicity: the union of minima over 1–3 random orders, taken within a
/// random set of "normal" worlds (worlds outside it are never chosen).
pub fn sample_cclm<R: Rng + ?Sized>(universe: &Arc<Universe>, rng: &mut R) -> ChoiceFunction {
    let n = universe.len();
    let k = rng.gen_range(1..=3);
    let orders: Vec<StrictOrder> = (0..k).map(|_| random_order(n, rng)).collect();
    let normal = if rng.gen_bool(0.3) {
        WorldSet::from_indices((0..n).filter(|_| rng.gen_bool(0.75)))
    } else {
        universe.all()
    };
    ChoiceFunction::from_fn(universe, |x| {
        let x = x.intersection(normal);
        orders
            .iter()
            .fold(WorldSet::EMPTY, |acc, o| acc.union(o.minima(x)))
    })
    .expect("minima contract")
}
