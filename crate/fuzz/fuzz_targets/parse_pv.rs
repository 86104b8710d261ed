#![no_main]

use cubepath::pv::{compile_pv, parse_pv, MAX_ACTIONS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_pv(text) {
        assert_eq!(parse_pv(&p.to_string()).as_ref(), Ok(&p));
        // keep compilation cheap
        if p.processes.len() <= 3 && p.processes.iter().all(|q| q.actions.len() <= MAX_ACTIONS / 2) {
            let _ = compile_pv(&p);
        }
    }
});
