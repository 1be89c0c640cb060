use std::sync::Arc;

use choice_logic::choice::sample_cclm;
use choice_logic::consequence::enumerate_tables;
use choice_logic::format::{
    choice_to_value, measure_to_value, operator_from_json, operator_to_value, relation_to_value, universe_from_json,
    universe_to_value, Loader,
};
use choice_logic::klm::relation_from_operator;
use choice_logic::qmeasure::measure_from_choice;
use choice_logic::{ConsequenceOperator, Universe};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn universe(kind: u8, n: usize, seed: u64) -> Arc<Universe> {
    let u = match kind {
        0 => Universe::discrete(n).unwrap(),
        1 => {
            let atoms: Vec<String> = (0..n.min(3)).map(|i| format!("a{i}")).collect();
            Universe::propositional(&atoms).unwrap()
        }
        _ => {
            let sentences = ["s", "t"];
            let worlds: Vec<(String, Vec<&str>)> = (0..n)
                .map(|w| {
                    let sat = sentences.iter().copied().enumerate().filter(|(i, _)| seed >> (2 * w + i) & 1 == 1);
                    (format!("w{w}"), sat.map(|(_, s)| s).collect())
                })
                .collect();
            Universe::abstract_universe(&sentences, &worlds).unwrap()
        }
    };
    Arc::new(u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn universes(kind in 0u8..3, n in 1usize..=4, seed in any::<u64>()) {
        let u = universe(kind, n, seed);
        let back = universe_from_json(&universe_to_value(&u).to_string()).unwrap();
        prop_assert_eq!(&back, u.as_ref());
    }

    #[test]
    fn choices_and_measures(kind in 0u8..2, n in 1usize..=3, seed in any::<u64>()) {
        let u = universe(kind, n, seed);
        let f = sample_cclm(&u, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = Loader::detached().choice_from_json(&choice_to_value(&f).to_string()).unwrap();
        prop_assert_eq!(&g, &f);
        let m = measure_from_choice(&f).unwrap();
        let back = Loader::detached().measure_from_json(&measure_to_value(&m).to_string()).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn relations(seed in any::<u64>()) {
        let u = Arc::new(Universe::propositional(&["p", "q"]).unwrap());
        let op = ConsequenceOperator::Semantic(sample_cclm(&u, &mut ChaCha8Rng::seed_from_u64(seed)));
        let rel = relation_from_operator(&op).unwrap();
        let back = Loader::detached().relation_from_json(&relation_to_value(&rel).to_string()).unwrap();
        prop_assert_eq!(back, rel);
    }

    #[test]
    fn loaders_never_panic(text in "[ -~]{0,60}") {
        let _ = universe_from_json(&text);
        let _ = operator_from_json(&text);
        let _ = Loader::detached().choice_from_json(&text);
        let _ = Loader::detached().measure_from_json(&text);
        let _ = Loader::detached().relation_from_json(&text);
    }
}

#[test]
fn every_two_sentence_table() {
    for t in enumerate_tables(&["a", "b"]).unwrap() {
        assert_eq!(operator_from_json(&operator_to_value(&t).to_string()).unwrap(), t);
    }
}
