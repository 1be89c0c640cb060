use std::sync::Arc;

use choice_logic::bits::{all_world_sets, WorldSet};
use choice_logic::choice::{enumerate_cclm, enumerate_ranked, sample_cclm};
use choice_logic::qmeasure::{choice_from_measure, measure_from_choice};
use choice_logic::{ChoiceFunction, ChoiceProperty, MeasureProperty, QualMeasure, Universe};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn discrete(n: usize) -> Arc<Universe> {
    Arc::new(Universe::discrete(n).unwrap())
}

fn cclm3() -> Vec<ChoiceFunction> {
    enumerate_cclm(&discrete(3)).unwrap().collect()
}

#[test]
fn measures_from_choices_have_the_basic_properties() {
    for f in cclm3() {
        let m = measure_from_choice(&f).unwrap();
        for p in MeasureProperty::BASIC {
            assert!(m.satisfies(p), "{p} {f:?}");
        }
    }
}

#[test]
fn both_consequences_agree() {
    for f in cclm3() {
        let m = measure_from_choice(&f).unwrap();
        for x in all_world_sets(3) {
            for q in all_world_sets(3) {
                let by_choice = f.apply(x).unwrap().is_subset(q);
                assert_eq!(m.entails_sets(x, q), by_choice);
            }
        }
    }
}

#[test]
fn heavy_elements_are_the_chosen_ones() {
    for f in cclm3() {
        let m = measure_from_choice(&f).unwrap();
        for x in all_world_sets(3) {
            let fx = f.apply(x).unwrap();
            let heavy = WorldSet::from_indices(x.iter().filter(|&w| m.heavy(w, x).unwrap()));
            assert_eq!(heavy, if fx.is_empty() { x } else { fx });
        }
    }
}

#[test]
fn round_trip_through_measures() {
    for f in cclm3() {
        let g = choice_from_measure(&measure_from_choice(&f).unwrap()).unwrap();
        assert!(g.is_cclm());
        for x in all_world_sets(3) {
            let fx = f.apply(x).unwrap();
            assert_eq!(g.apply(x).unwrap(), if fx.is_empty() { x } else { fx });
        }
    }
}

/// `X > Y` iff the first world of `X ∪ Y` in `order` is in `X` and not in `Y`.
fn lexicographic(u: &Arc<Universe>, order: &[usize]) -> QualMeasure {
    QualMeasure::from_fn(u, |x, y| {
        order
            .iter()
            .find(|&&w| x.union(y).contains(w))
            .is_some_and(|&w| x.contains(w) && !y.contains(w))
    })
    .unwrap()
}

/// Six measures with the basic properties followed by two without.
fn hand_measures() -> Vec<QualMeasure> {
    let u = discrete(3);
    let w = |ix: &[usize]| WorldSet::from_indices(ix.iter().copied());
    vec![
        QualMeasure::tarski(&u).unwrap(),
        QualMeasure::empty(&u).unwrap(),
        // w1 dominates: X > Y iff w1 ∈ X, w1 ∉ Y
        QualMeasure::from_fn(&u, |x, y| x.contains(0) && !y.contains(0)).unwrap(),
        lexicographic(&u, &[0, 1, 2]),
        lexicographic(&u, &[2, 0, 1]),
        // w3 is negligible
        QualMeasure::from_fn(&u, |x, y| !x.difference(w(&[2])).is_empty() && y.is_subset(w(&[2]))).unwrap(),
        // only the full set is large: fails negligible_union
        QualMeasure::from_fn(&u, |x, y| x == u.all() && y.is_empty()).unwrap(),
        // not closed upward: fails respects_inclusion
        QualMeasure::from_pairs(&u, &[(w(&[0, 1]), w(&[2])), (w(&[0, 1]), WorldSet::EMPTY)]).unwrap(),
    ]
}

#[test]
fn hand_fixture_verdicts() {
    let basic: Vec<bool> = hand_measures()
        .iter()
        .map(|m| MeasureProperty::BASIC.into_iter().all(|p| m.satisfies(p)))
        .collect();
    assert_eq!(basic, vec![true, true, true, true, true, true, false, false]);
    let ms = hand_measures();
    assert!(!ms[6].satisfies(MeasureProperty::NegligibleUnion));
    assert!(!ms[7].satisfies(MeasureProperty::RespectsInclusion));
}

#[test]
fn choices_from_measures_are_cclm() {
    let mut measures: Vec<QualMeasure> = cclm3().iter().map(|f| measure_from_choice(f).unwrap()).collect();
    let hand: Vec<QualMeasure> = hand_measures()
        .into_iter()
        .filter(|m| MeasureProperty::BASIC.into_iter().all(|p| m.satisfies(p)))
        .collect();
    assert_eq!(hand.len(), 6);
    measures.extend(hand);
    let mut negligible_seen = false;
    for m in measures {
        let f = choice_from_measure(&m).unwrap();
        assert!(f.is_cclm());
        for x in all_world_sets(3) {
            // a nonempty negligible X entails everything by measure, while
            // all of its elements are heavy, so the two definitions part ways
            let negligible = !x.is_empty() && !m.greater(x, WorldSet::EMPTY);
            negligible_seen |= negligible;
            for q in all_world_sets(3) {
                if negligible {
                    assert!(m.entails_sets(x, q));
                    assert_eq!(f.apply(x).unwrap(), x);
                } else {
                    assert_eq!(m.entails_sets(x, q), f.apply(x).unwrap().is_subset(q));
                }
            }
        }
    }
    assert!(negligible_seen);
}

#[test]
fn empty_relation_separates_the_two_consequences() {
    let u = discrete(1);
    let m = QualMeasure::empty(&u).unwrap();
    for p in MeasureProperty::BASIC {
        assert!(m.satisfies(p));
    }
    let f = choice_from_measure(&m).unwrap();
    assert!(m.entails_sets(u.all(), WorldSet::EMPTY));
    assert!(!f.apply(u.all()).unwrap().is_subset(WorldSet::EMPTY));
}

#[test]
fn arrow_matches_modularity() {
    for f in cclm3() {
        let m = measure_from_choice(&f).unwrap();
        assert_eq!(
            f.satisfies(ChoiceProperty::Arrow),
            m.satisfies(MeasureProperty::Modularity),
            "{f:?}"
        );
    }
}

#[test]
fn modular_measures_give_arrow_choices() {
    for m in hand_measures() {
        if m.satisfies(MeasureProperty::RespectsInclusion) && m.satisfies(MeasureProperty::Modularity) {
            if let Ok(f) = choice_from_measure(&m) {
                assert!(f.satisfies(ChoiceProperty::Arrow));
            }
        }
    }
}

#[test]
fn expansion_matches_transfer() {
    let mut agreeing = (0, 0);
    for f in cclm3() {
        let m = measure_from_choice(&f).unwrap();
        let e = f.satisfies(ChoiceProperty::Expansion);
        assert_eq!(e, m.check_expansion_transfer().holds);
        if e {
            agreeing.0 += 1
        } else {
            agreeing.1 += 1
        }
    }
    assert_eq!(agreeing, (32, 3));
}

#[test]
fn ranked_measures_are_modular() {
    for f in enumerate_ranked(&discrete(3)).unwrap() {
        assert!(measure_from_choice(&f).unwrap().satisfies(MeasureProperty::Modularity));
    }
}

#[test]
fn measure_witnesses_recheck() {
    for m in hand_measures() {
        for p in MeasureProperty::ALL {
            if let Some(w) = m.check(p).witness {
                assert!(m.violates(p, &w), "{p}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_conversions(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample_cclm(&discrete(n), &mut rng);
        let m = measure_from_choice(&f).unwrap();
        for p in MeasureProperty::BASIC {
            prop_assert!(m.satisfies(p));
        }
        let g = choice_from_measure(&m).unwrap();
        prop_assert!(g.is_cclm());
        for x in all_world_sets(n) {
            let fx = f.apply(x).unwrap();
            prop_assert_eq!(g.apply(x).unwrap(), if fx.is_empty() { x } else { fx });
        }
    }
}
