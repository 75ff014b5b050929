//! Configuration parsing must never panic, including the typed getters.
#![no_main]

use libfuzzer_sys::fuzz_target;

use cutbench_cli::config::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = parse_config(text) {
        let _ = cfg.check_known();
        let _ = cfg.parsed::<u64>("sweeps_per_run", "integer");
        let _ = cfg.parsed::<f64>("t_hot", "number");
        let _ = cfg.parsed::<usize>("replicas", "integer");
    }
});
