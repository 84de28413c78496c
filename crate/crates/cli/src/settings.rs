//! Flat `key=value` run configuration. Values come from an optional config
//! file and are overridden by command-line flags.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use entrolen::rational::{self, Rational};

/// Every recognised key; config files use the flag names without dashes.
pub const KEYS: &[&str] = &[
    "command",
    "group",
    "field",
    "scheme",
    "rank",
    "gen",
    "sub-gen",
    "presentation",
    "sub-presentation",
    "elem",
    "nmax",
    "n",
    "tiles",
    "eps",
    "radius",
    "stability-window",
    "max-steps",
    "tol",
    "sigma",
    "rho",
    "budget",
    "seed",
    "output",
    "c-index",
    "n-from",
    "n-check",
];

pub const MAX_NMAX: usize = 1000;
pub const MAX_RADIUS: usize = 64;

#[derive(Clone, Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('_', "-")
}

impl Settings {
    pub fn parse_file(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected key=value", idx + 1))?;
            let key = normalize(key);
            if !KEYS.contains(&key.as_str()) {
                bail!("config line {}: unknown key {key:?}", idx + 1);
            }
            if values
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                bail!("config line {}: duplicate key {key:?}", idx + 1);
            }
        }
        Ok(Settings { values })
    }

    /// Flag values win over file values.
    pub fn set(&mut self, key: &str, value: Option<String>) {
        debug_assert!(KEYS.contains(&key), "{key}");
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| anyhow!("missing --{key}"))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.trim()
                    .parse::<T>()
                    .map_err(|e| anyhow!("--{key} {v:?}: {e}"))
            })
            .transpose()
    }

    /// Integer in `lo..=hi`, or `default` when absent.
    pub fn usize_in(&self, key: &str, default: usize, lo: usize, hi: usize) -> Result<usize> {
        let v = self.parsed::<usize>(key)?.unwrap_or(default);
        if v < lo || v > hi {
            bail!("--{key} must lie in {lo}..={hi}, got {v}");
        }
        Ok(v)
    }

    pub fn rational(&self, key: &str) -> Result<Option<Rational>> {
        self.get(key)
            .map(|v| rational::parse(v).with_context(|| format!("--{key} {v:?}")))
            .transpose()
    }

    pub fn index_list(&self, key: &str) -> Result<Option<Vec<usize>>> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|e| anyhow!("--{key} {x:?}: {e}"))
                    })
                    .collect()
            })
            .transpose()
    }

    /// `ENTROLEN_SEED` beats both flag and file; default 0.
    pub fn seed(&self) -> Result<u64> {
        if let Ok(v) = std::env::var("ENTROLEN_SEED") {
            return v
                .trim()
                .parse()
                .map_err(|e| anyhow!("ENTROLEN_SEED {v:?}: {e}"));
        }
        Ok(self.parsed::<u64>("seed")?.unwrap_or(0))
    }
}
