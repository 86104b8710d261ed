#![no_main]

use cubepath::dpath::parse_dpath;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_dpath(text) {
        assert_eq!(parse_dpath(&p.to_string()).as_ref(), Ok(&p));
    }
});
