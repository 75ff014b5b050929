//! Bench-report JSON parsing must never panic; accepted reports must
//! round-trip and survive the aggregate-consistency check.
#![no_main]

use libfuzzer_sys::fuzz_target;

use cutbench_cli::report::BenchReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = BenchReport::from_json(text) {
        let _ = report.recompute_consistent();
        let again = BenchReport::from_json(&report.to_json()).expect("round trip");
        assert_eq!(again, report);
    }
});
