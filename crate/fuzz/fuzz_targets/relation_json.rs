#![no_main]

use std::sync::Arc;

use choice_logic::format::Loader;
use choice_logic::klm::lift;
use choice_logic::Universe;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rel) = Loader::detached().relation_from_json(text) {
            let _ = lift(&rel, false);
        }
        let birds = Arc::new(Universe::propositional(&["b", "f"]).unwrap());
        let _ = Loader::detached().with_universe(birds).relation_from_json(text);
    }
});
