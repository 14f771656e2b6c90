#![no_main]

use libfuzzer_sys::fuzz_target;
use w3_core::engine::StateVector;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(v) = StateVector::from_json(src) {
        let text = serde_json::to_string(&v).expect("serializes");
        assert_eq!(StateVector::from_json(&text).expect("round trip"), v);
    }
});
