#![no_main]

use choice_logic::format::{operator_from_json, operator_to_value};
use choice_logic::ConsequenceOperator;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(t) = operator_from_json(text) {
            assert_eq!(operator_from_json(&operator_to_value(&t).to_string()).unwrap(), t);
            let _ = ConsequenceOperator::Tabulated(t).satisfies_five();
        }
    }
});
