use std::sync::Arc;

use choice_logic::bits::{all_sentence_sets, all_world_sets, SentenceSet, WorldSet};
use choice_logic::{Formula, Universe};
use proptest::prelude::*;

/// Every abstract universe with up to `max_worlds` worlds over `sentences`,
/// worlds given by their satisfied-sentence bit patterns.
fn abstract_universes(sentences: usize, max_worlds: usize) -> Vec<Universe> {
    let names: Vec<String> = (0..sentences).map(|i| format!("s{i}")).collect();
    let patterns = 1u64 << sentences;
    let mut out = Vec::new();
    for k in 0..=max_worlds {
        for code in 0..patterns.pow(k as u32) {
            let worlds: Vec<(String, Vec<String>)> = (0..k)
                .map(|w| {
                    let sat = code / patterns.pow(w as u32) % patterns;
                    let list = (0..sentences).filter(|i| sat >> i & 1 == 1).map(|i| names[i].clone()).collect();
                    (format!("w{w}"), list)
                })
                .collect();
            out.push(Universe::abstract_universe(&names, &worlds).unwrap());
        }
    }
    out
}

fn galois_laws_hold(u: &Universe) -> bool {
    let n = u.sentences().unwrap().len();
    let m = |a: SentenceSet| u.mod_of_sentence_set(a);
    let th = |x: WorldSet| u.theory_set(x);
    let sents: Vec<SentenceSet> = all_sentence_sets(n).collect();
    let worlds: Vec<WorldSet> = all_world_sets(u.len()).collect();
    let sentence_laws = sents.iter().all(|&a| {
        a.is_subset(th(m(a)))
            && m(a) == m(th(m(a)))
            && sents.iter().all(|&b| {
                m(a.union(b)) == m(a).intersection(m(b))
                    && (!a.is_subset(b) || (m(b).is_subset(m(a)) && th(m(a)).is_subset(th(m(b)))))
            })
    });
    let world_laws = worlds.iter().all(|&x| {
        x.is_subset(m(th(x)))
            && th(x) == th(m(th(x)))
            && worlds.iter().all(|&y| {
                th(x.union(y)) == th(x).intersection(th(y))
                    && (!x.is_subset(y) || (th(y).is_subset(th(x)) && m(th(x)).is_subset(m(th(y)))))
            })
    });
    sentence_laws && world_laws
}

#[test]
fn galois_laws_on_small_abstract_universes() {
    for s in 0..=3 {
        for u in abstract_universes(s, 4) {
            assert!(galois_laws_hold(&u), "{u:?}");
        }
    }
}

/// Propositional premises are finite sets of formulas; one representative
/// per class is enough since Mod only sees classes.
#[test]
fn galois_laws_on_two_atoms() {
    let u = Universe::propositional(&["p", "q"]).unwrap();
    let classes: Vec<Formula> = all_world_sets(4).map(|x| u.representative(x).unwrap()).collect();
    let premise_sets: Vec<Vec<Formula>> = (0..classes.len())
        .flat_map(|i| (i..classes.len()).map(move |j| (i, j)))
        .map(|(i, j)| vec![classes[i].clone(), classes[j].clone()])
        .chain(std::iter::once(Vec::new()))
        .collect();
    let m = |a: &[Formula]| u.mod_set(a).unwrap();
    // Th(X) is held by its models; membership of a formula is Mod(Th X) ⊆ Mod(a)
    let th_contains = |x: WorldSet, a: &Formula| x.is_subset(u.mod_sentence(a).unwrap());
    for a in &premise_sets {
        assert!(a.iter().all(|s| th_contains(m(a), s)));
        assert_eq!(m(a), u.closure(m(a)));
        for b in &premise_sets {
            let ab: Vec<Formula> = a.iter().chain(b).cloned().collect();
            assert_eq!(m(&ab), m(a).intersection(m(b)));
        }
    }
    for x in all_world_sets(4) {
        assert!(x.is_subset(u.closure(x)));
        for y in all_world_sets(4) {
            for c in &classes {
                let union = th_contains(x.union(y), c);
                assert_eq!(union, th_contains(x, c) && th_contains(y, c));
                if x.is_subset(y) && th_contains(y, c) {
                    assert!(th_contains(x, c));
                }
            }
        }
    }
}

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["p", "q", "r2", "long_name"]).prop_map(|a| Formula::Atom(a.to_owned())),
        Just(Formula::True),
        Just(Formula::False),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    })
}

proptest! {
    #[test]
    fn render_parse_round_trip(f in formula()) {
        prop_assert_eq!(Formula::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn parse_never_panics(s in "[ -~]{0,40}") {
        let _ = Formula::parse(&s);
    }

    #[test]
    fn evaluation_is_compositional(a in formula(), b in formula(), v in any::<[bool; 4]>()) {
        let names = ["p", "q", "r2", "long_name"];
        let val = |x: &str| names.iter().position(|n| *n == x).map(|i| v[i]);
        let e = |f: &Formula| f.eval_with(&val).unwrap();
        prop_assert_eq!(e(&Formula::and(a.clone(), b.clone())), e(&a) && e(&b));
        prop_assert_eq!(e(&Formula::or(a.clone(), b.clone())), e(&a) || e(&b));
        prop_assert_eq!(e(&Formula::implies(a.clone(), b.clone())), !e(&a) || e(&b));
        prop_assert_eq!(e(&Formula::not(a.clone())), !e(&a));
    }

    #[test]
    fn representatives_have_the_right_models(bits in 0u64..16) {
        let u = Arc::new(Universe::propositional(&["p", "q"]).unwrap());
        let x = WorldSet(bits);
        prop_assert_eq!(u.mod_sentence(&u.representative(x).unwrap()).unwrap(), x);
    }
}

fn combine(left: &[(Formula, u8)], right: &[(Formula, u8)], out: &mut Vec<(Formula, u8)>) {
    for (a, ta) in left {
        for (b, tb) in right {
            out.push((Formula::and(a.clone(), b.clone()), ta & tb));
            out.push((Formula::or(a.clone(), b.clone()), ta | tb));
            out.push((Formula::implies(a.clone(), b.clone()), (!ta | tb) & 0xF));
        }
    }
}

/// Truth tables built bottom-up agree with the evaluator. Depth two is
/// complete; the third level (about 10^8 formulas in full) pairs every
/// depth-two formula with every depth-≤1 formula on either side.
#[test]
fn truth_tables_to_depth_three() {
    let u = Universe::propositional(&["p", "q"]).unwrap();
    let mut level: Vec<(Formula, u8)> = vec![
        (Formula::Atom("p".into()), 0b1100),
        (Formula::Atom("q".into()), 0b1010),
        (Formula::True, 0b1111),
        (Formula::False, 0),
    ];
    let mut shallow = Vec::new();
    for _ in 0..2 {
        shallow = level.clone();
        let mut next = level.clone();
        next.extend(level.iter().map(|(a, ta)| (Formula::not(a.clone()), !ta & 0xF)));
        combine(&level, &level, &mut next);
        level = next;
    }
    let mut deep: Vec<(Formula, u8)> = level.iter().map(|(a, ta)| (Formula::not(a.clone()), !ta & 0xF)).collect();
    combine(&level, &shallow, &mut deep);
    combine(&shallow, &level, &mut deep);
    for (f, table) in level.iter().chain(&deep) {
        // world w is valuation w with p as the high bit; table bit w is world w
        let models = u.mod_sentence(f).unwrap();
        let expected = WorldSet::from_indices((0..4).filter(|&w| table >> w & 1 == 1));
        assert_eq!(models, expected, "{f}");
    }
}
