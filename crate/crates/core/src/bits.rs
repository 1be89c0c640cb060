//! Fixed-width bit sets used for sets of worlds and sets of sentences.

use std::fmt;

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name(pub u64);

        impl $name {
            pub const EMPTY: $name = $name(0);

            /// The set `{0, .., n-1}`.
            pub fn full(n: usize) -> $name {
                debug_assert!(n <= 64);
                if n == 64 {
                    $name(u64::MAX)
                } else {
                    $name((1u64 << n) - 1)
                }
            }

            pub fn singleton(i: usize) -> $name {
                $name(1u64 << i)
            }

            pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> $name {
                it.into_iter().fold($name::EMPTY, |s, i| s.with(i))
            }

            #[inline]
            pub fn bits(self) -> u64 {
                self.0
            }

            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }

            #[inline]
            pub fn contains(self, i: usize) -> bool {
                i < 64 && self.0 >> i & 1 == 1
            }

            #[inline]
            pub fn with(self, i: usize) -> $name {
                $name(self.0 | 1u64 << i)
            }

            #[inline]
            pub fn without(self, i: usize) -> $name {
                $name(self.0 & !(1u64 << i))
            }

            #[inline]
            pub fn union(self, other: $name) -> $name {
                $name(self.0 | other.0)
            }

            #[inline]
            pub fn intersection(self, other: $name) -> $name {
                $name(self.0 & other.0)
            }

            #[inline]
            pub fn difference(self, other: $name) -> $name {
                $name(self.0 & !other.0)
            }

            #[inline]
            pub fn is_subset(self, other: $name) -> bool {
                self.0 & !other.0 == 0
            }

            #[inline]
            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[inline]
            pub fn intersects(self, other: $name) -> bool {
                self.0 & other.0 != 0
            }

            #[inline]
            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            /// Member indices in increasing order.
            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut rest = self.0;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let i = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        Some(i)
                    }
                })
            }

            /// Every subset of `self`, in increasing numeric order.
            pub fn subsets(self) -> impl Iterator<Item = $name> {
                let mask = self.0;
                let mut next = Some(0u64);
                std::iter::from_fn(move || {
                    let cur = next?;
                    next = if cur == mask {
                        None
                    } else {
                        Some((cur.wrapping_sub(mask)) & mask)
                    };
                    Some($name(cur))
                })
            }

            /// Every superset of `self` inside `within`, in increasing numeric order.
            pub fn supersets_within(self, within: $name) -> impl Iterator<Item = $name> {
                let base = self;
                within.difference(self).subsets().map(move |extra| base.union(extra))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

bitset!(
    /// A subset of a universe's worlds, indexed by world position.
    WorldSet
);

bitset!(
    /// A subset of a finite sentence list, indexed by sentence position.
    SentenceSet
);

/// All subsets of an `n`-element base set, in increasing numeric order.
pub fn all_world_sets(n: usize) -> impl Iterator<Item = WorldSet> {
    WorldSet::full(n).subsets()
}

pub fn all_sentence_sets(n: usize) -> impl Iterator<Item = SentenceSet> {
    SentenceSet::full(n).subsets()
}
