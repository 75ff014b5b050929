//! Plain-text key-value configuration files.
//!
//! One `key = value` pair per line; `#` starts a comment; blank lines are
//! ignored. Keys are normalized so `sweeps-per-run` and `sweeps_per_run`
//! are the same key. Values given on the command line take precedence over
//! the file.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("line {line}: duplicate key {key:?}")]
    DuplicateKey { line: usize, key: String },
    #[error("key {key:?}: cannot parse {value:?} as {want}")]
    BadValue {
        key: String,
        value: String,
        want: &'static str,
    },
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
}

/// Keys understood by the solver-parameter merge.
pub const KNOWN_KEYS: &[&str] = &[
    "solver",
    "sweeps_per_run",
    "restarts",
    "t_hot",
    "t_cold",
    "cooling_factor",
    "replicas",
    "beta_min",
    "beta_max",
    "icm_period",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

pub fn parse_config(text: &str) -> Result<ConfigFile, ConfigError> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Malformed {
                line: idx + 1,
                text: raw.to_string(),
            });
        };
        let key = normalize(key);
        if key.is_empty() || key.chars().any(|c| !c.is_ascii_alphanumeric() && c != '_') {
            return Err(ConfigError::Malformed {
                line: idx + 1,
                text: raw.to_string(),
            });
        }
        if entries.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(ConfigError::DuplicateKey { line: idx + 1, key });
        }
    }
    Ok(ConfigFile { entries })
}

impl ConfigFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(&normalize(key)).map(|s| s.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    /// Error on any key the solver merge does not understand; catches typos.
    pub fn check_known(&self) -> Result<(), ConfigError> {
        for key in self.keys() {
            if !KNOWN_KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey(key.to_string()));
            }
        }
        Ok(())
    }

    pub fn parsed<T: std::str::FromStr>(
        &self,
        key: &str,
        want: &'static str,
    ) -> Result<Option<T>, ConfigError> {
        match self.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| ConfigError::BadValue {
                key: key.to_string(),
                value: raw.to_string(),
                want,
            }),
        }
    }
}
