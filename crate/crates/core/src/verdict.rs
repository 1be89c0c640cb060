use crate::bits::WorldSet;

/// The violated instance of a property: named world sets, plus a world for
/// properties that quantify over one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub sets: Vec<(&'static str, WorldSet)>,
    pub world: Option<usize>,
}

impl Witness {
    pub fn sets(sets: &[(&'static str, WorldSet)]) -> Witness {
        Witness {
            sets: sets.to_vec(),
            world: None,
        }
    }

    pub fn get(&self, name: &str) -> Option<WorldSet> {
        self.sets.iter().find(|(n, _)| *n == name).map(|&(_, s)| s)
    }
}

/// Outcome of an exhaustive property check over world sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: &'static str,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyVerdict {
    pub(crate) fn from_search(property: &'static str, found: Option<Witness>) -> PropertyVerdict {
        PropertyVerdict {
            property,
            holds: found.is_none(),
            witness: found,
        }
    }
}
