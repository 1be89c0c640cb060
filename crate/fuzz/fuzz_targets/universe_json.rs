#![no_main]

use choice_logic::format::{universe_from_json, universe_to_value};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(u) = universe_from_json(text) {
            assert_eq!(universe_from_json(&universe_to_value(&u).to_string()).unwrap(), u);
        }
    }
});
