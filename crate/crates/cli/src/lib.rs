//! Library side of the cutbench CLI: the key-value configuration format
//! and the JSON bench report schema. Kept as a library so the parsers can
//! be reused and fuzzed.

pub mod config;
pub mod report;
