#![no_main]

use libfuzzer_sys::fuzz_target;
use w3_core::ideal::SpectrumTable;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(table) = SpectrumTable::from_json(src) {
        if let Ok(pairs) = table.pairing() {
            assert_eq!(pairs.len(), table.points.len());
        }
    }
});
