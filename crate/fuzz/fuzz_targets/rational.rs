#![no_main]

use libfuzzer_sys::fuzz_target;
use w3_core::Rat;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(r) = src.parse::<Rat>() {
        assert_eq!(r.to_string().parse::<Rat>().expect("display parses"), r);
    }
});
