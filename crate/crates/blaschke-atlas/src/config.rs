//! Flat `key = value` configuration files. Lines starting with `#` and blank
//! lines are ignored; values are kept verbatim and parsed where they are
//! used, so one file can serve several subcommands.

use std::collections::BTreeMap;

use crate::error::AtlasError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    map: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, AtlasError> {
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(AtlasError::Config(format!(
                    "config line {}: expected key=value, got {raw:?}",
                    idx + 1
                )));
            };
            let key = key.trim();
            if key.is_empty() {
                return Err(AtlasError::Config(format!(
                    "config line {}: empty key",
                    idx + 1
                )));
            }
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Settings { map })
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, AtlasError> {
        Settings::parse(&crate::export::read_text(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.map.get(key).map(String::as_str)
    }

    /// Parse the value under `key` if present, reporting the key on failure.
    pub fn typed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, AtlasError> {
        self.get(key)
            .map(|raw| {
                raw.parse().map_err(|_| {
                    AtlasError::Config(format!("config key {key}: cannot parse {raw:?}"))
                })
            })
            .transpose()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
