#![no_main]

use libfuzzer_sys::fuzz_target;
use w3_core::engine::parse::parse_vector;
use w3_core::engine::Engine;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    let Ok(expr) = parse_vector(src) else { return };
    // Evaluation cost grows quickly with mode indices; only reduce small words.
    let small = expr.terms.iter().all(|(_, word)| word.len() <= 6 && word.iter().all(|m| m.index.abs() <= 8));
    if small {
        let v = expr.evaluate(Engine::global());
        let again = parse_vector(&v.to_string()).expect("display output parses").evaluate(Engine::global());
        assert_eq!(v, again);
    }
});
