#![no_main]

use libfuzzer_sys::fuzz_target;
use w3_core::qseries::parse_complex;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        let _ = parse_complex(src);
    }
});
