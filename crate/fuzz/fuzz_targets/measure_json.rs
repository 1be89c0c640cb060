#![no_main]

use choice_logic::format::Loader;
use choice_logic::qmeasure::choice_from_measure;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = Loader::detached().measure_from_json(text) {
            let _ = choice_from_measure(&m);
        }
    }
});
