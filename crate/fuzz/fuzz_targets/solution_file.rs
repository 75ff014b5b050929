//! Solution-file parsing must never panic; when a header declares a
//! variable count, decoding the payload against it must not panic either.
#![no_main]

use libfuzzer_sys::fuzz_target;

use cutbench::verify::{decode_hex_str, parse_solution_file};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sf) = parse_solution_file(text) {
        if let Some(n) = sf.n {
            let _ = decode_hex_str(&sf.payload, n.min(1 << 20));
        }
    }
});
