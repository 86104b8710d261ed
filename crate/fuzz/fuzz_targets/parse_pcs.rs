#![no_main]

use cubepath::pcs::{parse_pcs, read_pcs, write_pcs};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(raw) = parse_pcs(text) {
        let _ = raw.validate();
    }
    if let Ok(k) = read_pcs(text) {
        let out = write_pcs(&k);
        assert_eq!(read_pcs(&out).as_ref(), Ok(&k));
    }
});
