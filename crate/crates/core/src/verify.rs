//! Hexadecimal solution codec and cut certification.
//!
//! A solution for an n-variable instance is a hex string of ceil(n/4)
//! characters. Each character expands to 4 bits, most-significant bit
//! first; bit k (counting from 0, left to right) is variable k+1. Pad bits
//! past variable n must be zero on encode and are ignored on decode.
//!
//! Two record solutions ship with the crate and certify exactly:
//! 7008 on G72 and 9940 on G77.

use thiserror::Error;

use crate::instances::{registry_lookup, ProblemInstance};
use crate::model::{cut_value, ModelError, SpinConfig};

/// Record cut of 7008 on G72.
pub const G72_RECORD_HEX: &str = include_str!("../assets/g72_7008.hex");
/// Record cut of 9940 on G77.
pub const G77_RECORD_HEX: &str = include_str!("../assets/g77_9940.hex");

/// Bundled record solution for a registry id, as (hex, n, claimed cut).
pub fn bundled_record(id: &str) -> Option<(&'static str, usize, i64)> {
    match id {
        "G72" => Some((G72_RECORD_HEX, 10_000, 7008)),
        "G77" => Some((G77_RECORD_HEX, 14_000, 9940)),
        _ => None,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HexError {
    #[error("invalid hex character {found:?} at position {pos}")]
    InvalidChar { pos: usize, found: char },
    #[error("{chars} hex characters supply {} bits; {n} variables declared", .chars * 4)]
    TooShort { chars: usize, n: usize },
    #[error("{chars} hex characters supply {} bits for {n} variables; only final-character padding is allowed", .chars * 4)]
    TooLong { chars: usize, n: usize },
    #[error("solution declares no variable count")]
    MissingLength,
}

/// A validated hex payload plus its declared variable count.
///
/// Whitespace (including line breaks) is stripped and case is normalized
/// before validation; `4 * hex_len >= n` and `4 * hex_len - n < 4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HexSolution {
    hex: String,
    n: usize,
}

impl HexSolution {
    pub fn new(raw: &str, n: usize) -> Result<Self, HexError> {
        let mut hex = String::with_capacity(raw.len());
        for c in raw.chars().filter(|c| !c.is_whitespace()) {
            if !c.is_ascii_hexdigit() {
                return Err(HexError::InvalidChar { pos: hex.len(), found: c });
            }
            hex.push(c.to_ascii_uppercase());
        }
        let chars = hex.len();
        if 4 * chars < n {
            return Err(HexError::TooShort { chars, n });
        }
        if 4 * chars >= n + 4 {
            return Err(HexError::TooLong { chars, n });
        }
        Ok(HexSolution { hex, n })
    }

    pub fn hex(&self) -> &str {
        &self.hex
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// Expand a hex solution into a spin configuration. MSB-first within each
/// character; trailing pad bits are ignored.
pub fn decode_hex_solution(hs: &HexSolution) -> SpinConfig {
    let mut bits = Vec::with_capacity(hs.n);
    'outer: for c in hs.hex.chars() {
        let v = c.to_digit(16).expect("validated hex") as u8;
        for shift in [3u8, 2, 1, 0] {
            bits.push((v >> shift) & 1);
            if bits.len() == hs.n {
                break 'outer;
            }
        }
    }
    SpinConfig::from_bits(&bits)
}

/// One-step decode of a raw string.
pub fn decode_hex_str(raw: &str, n: usize) -> Result<SpinConfig, HexError> {
    Ok(decode_hex_solution(&HexSolution::new(raw, n)?))
}

/// Inverse of [`decode_hex_solution`]: uppercase output, zero pad bits.
pub fn encode_hex_solution(cfg: &SpinConfig) -> String {
    let bits = cfg.to_bits();
    let mut out = String::with_capacity(bits.len().div_ceil(4));
    for chunk in bits.chunks(4) {
        let mut v = 0u32;
        for (k, &b) in chunk.iter().enumerate() {
            v |= (b as u32) << (3 - k);
        }
        out.push(char::from_digit(v, 16).unwrap().to_ascii_uppercase());
    }
    out
}

/// Outcome of certifying a configuration against an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CertReport {
    pub instance_id: String,
    pub cut: i64,
    pub claimed: Option<i64>,
    /// `Some(cut == claimed)` when a claim was given.
    pub matches_claim: Option<bool>,
    pub best_known: Option<i64>,
    /// `cut / best_known` when the registry knows the instance.
    pub quality: Option<f64>,
}

impl CertReport {
    /// True unless a claim was given and missed.
    pub fn claim_ok(&self) -> bool {
        self.matches_claim.unwrap_or(true)
    }
}

/// Compute the exact cut of `cfg` on `inst` and compare against an optional
/// claimed value. An instance missing from the registry only suppresses the
/// quality field.
pub fn certify(
    inst: &ProblemInstance,
    cfg: &SpinConfig,
    claimed: Option<i64>,
) -> Result<CertReport, ModelError> {
    let cut = cut_value(inst, cfg)?;
    let best_known = registry_lookup(inst.id()).map(|meta| meta.best_known);
    let quality = best_known.map(|best| cut as f64 / best as f64);
    Ok(CertReport {
        instance_id: inst.id().to_string(),
        cut,
        claimed,
        matches_claim: claimed.map(|c| c == cut),
        best_known,
        quality,
    })
}

// Configurations serialize as their hex encoding plus the variable count,
// which keeps reports compact and human-checkable.
impl serde::Serialize for SpinConfig {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("SpinConfig", 2)?;
        s.serialize_field("n", &self.len())?;
        s.serialize_field("hex", &encode_hex_solution(self))?;
        s.end()
    }
}

impl<'de> serde::Deserialize<'de> for SpinConfig {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Repr {
            n: usize,
            hex: String,
        }
        let repr = Repr::deserialize(deserializer)?;
        decode_hex_str(&repr.hex, repr.n).map_err(serde::de::Error::custom)
    }
}

/// A solution file: optional `#` comment lines, an optional
/// `instance=<id> n=<int> claimed=<int>` header line, then the hex payload
/// (possibly split across lines).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolutionFile {
    pub instance: Option<String>,
    pub n: Option<usize>,
    pub claimed: Option<i64>,
    pub payload: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionFileError {
    #[error("line {line}: bad header field {field:?}")]
    BadHeader { line: usize, field: String },
    #[error("no hex payload found")]
    EmptyPayload,
}

pub fn parse_solution_file(text: &str) -> Result<SolutionFile, SolutionFileError> {
    let mut out = SolutionFile::default();
    let mut payload = String::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if payload.is_empty() && line.contains('=') {
            for field in line.split_whitespace() {
                let Some((key, value)) = field.split_once('=') else {
                    return Err(SolutionFileError::BadHeader {
                        line: idx + 1,
                        field: field.to_string(),
                    });
                };
                let bad = || SolutionFileError::BadHeader {
                    line: idx + 1,
                    field: field.to_string(),
                };
                match key {
                    "instance" => out.instance = Some(value.to_string()),
                    "n" => out.n = Some(value.parse().map_err(|_| bad())?),
                    "claimed" => out.claimed = Some(value.parse().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
            continue;
        }
        payload.push_str(line);
    }
    if payload.is_empty() {
        return Err(SolutionFileError::EmptyPayload);
    }
    out.payload = payload;
    Ok(out)
}
