//! Flat `key = value` experiment configuration.

use std::collections::BTreeMap;

use num_complex::Complex64;
use thiserror::Error;

use crate::parse::parse_complex;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected 'key = value'")]
    Syntax { line: usize },
    #[error("unknown key '{0}'")]
    UnknownKey(String),
    #[error("key '{key}' given twice")]
    Duplicate { key: String },
    #[error("bad value for '{key}': {message}")]
    Value { key: String, message: String },
}

const KEYS: &[&str] = &[
    "function", "eta", "k", "rmin", "rmax", "points", "angles", "budget", "slack", "nmin", "nmax", "margin",
    "threshold", "seed", "sigma", "r",
];

/// Raw settings; experiments read what they need and fill in defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() {
                return Err(ConfigError::Syntax { line: i + 1 });
            }
            if !KEYS.contains(&k) {
                return Err(ConfigError::UnknownKey(k.into()));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(ConfigError::Duplicate { key: k.into() });
            }
        }
        Ok(Config { values })
    }

    pub fn set(&mut self, key: &str, value: impl ToString) -> Result<(), ConfigError> {
        if !KEYS.contains(&key) {
            return Err(ConfigError::UnknownKey(key.into()));
        }
        self.values.insert(key.into(), value.to_string());
        Ok(())
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.set(key, value).expect("known key");
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn bad(key: &str, message: impl ToString) -> ConfigError {
        ConfigError::Value { key: key.into(), message: message.to_string() }
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        self.values.get(key).cloned().unwrap_or_else(|| default.into())
    }

    pub fn real(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| Self::bad(key, "not a number")),
        }
    }

    pub fn optional_real(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        self.values.get(key).map(|_| self.real(key, 0.0)).transpose()
    }

    pub fn positive(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        let v = self.real(key, default)?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(Self::bad(key, "must be positive"))
        }
    }

    pub fn integer(&self, key: &str, default: u64) -> Result<u64, ConfigError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| Self::bad(key, "not a non-negative integer")),
        }
    }

    pub fn integers(&self, key: &str, default: &[u64]) -> Result<Vec<u64>, ConfigError> {
        match self.values.get(key) {
            None => Ok(default.to_vec()),
            Some(v) => v
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| Self::bad(key, "not a list of integers")))
                .collect(),
        }
    }

    pub fn complex(&self, key: &str, default: Complex64) -> Result<Complex64, ConfigError> {
        match self.values.get(key) {
            None => Ok(default),
            Some(v) => parse_complex(v).map_err(|e| Self::bad(key, e)),
        }
    }
}
