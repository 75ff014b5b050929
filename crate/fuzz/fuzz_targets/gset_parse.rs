//! Gset text parser must never panic, and accepted instances must
//! round-trip through the canonical serializer.
#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = cutbench::instances::parse_gset(text) {
        let back = cutbench::instances::parse_gset(&inst.to_gset_text())
            .expect("canonical serialization must reparse");
        assert_eq!(back.n(), inst.n());
        assert_eq!(back.edges(), inst.edges());
    }
});
