#![no_main]

use choice_logic::Formula;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = Formula::parse(text) {
            assert_eq!(Formula::parse(&f.render()).unwrap(), f);
        }
    }
});
