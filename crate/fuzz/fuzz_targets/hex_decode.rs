//! Hex solution decoding must never panic; accepted payloads must survive
//! an encode/decode round trip.
#![no_main]

use libfuzzer_sys::fuzz_target;

use cutbench::verify::{decode_hex_str, encode_hex_solution};

fuzz_target!(|data: &[u8]| {
    if data.len() < 2 {
        return;
    }
    let n = u16::from_le_bytes([data[0], data[1]]) as usize;
    let Ok(raw) = std::str::from_utf8(&data[2..]) else { return };
    if let Ok(cfg) = decode_hex_str(raw, n) {
        assert_eq!(cfg.len(), n);
        let hex = encode_hex_solution(&cfg);
        assert_eq!(decode_hex_str(&hex, n).unwrap(), cfg);
    }
});
