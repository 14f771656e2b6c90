#![no_main]

use libfuzzer_sys::fuzz_target;
use w3_core::zhu::BiPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(p) = BiPoly::from_json(src) {
        let text = serde_json::to_string(&p).expect("serializes");
        assert_eq!(BiPoly::from_json(&text).expect("round trip"), p);
    }
});
