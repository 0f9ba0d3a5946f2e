//! Optional `key = value` file whose entries act as defaults for flags.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

pub const KEYS: &[&str] = &[
    "lambda",
    "ell",
    "n",
    "grid",
    "alpha",
    "beta",
    "tol",
    "max-iter",
    "eps",
    "max-outer",
    "out",
    "ladder",
];

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    entries: BTreeMap<String, (usize, String)>,
    source: String,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!("{source}:{line_no}: expected `key = value`, found `{raw}`");
            };
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                bail!(
                    "{source}:{line_no}: unknown key `{key}` (known: {})",
                    KEYS.join(", ")
                );
            }
            if entries
                .insert(key.clone(), (line_no, value.trim().to_string()))
                .is_some()
            {
                bail!("{source}:{line_no}: duplicate key `{key}`");
            }
        }
        Ok(Self {
            entries,
            source: source.to_string(),
        })
    }

    /// Parsed value for `key`, if present.
    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| {
                anyhow::anyhow!("{}:{line}: invalid value `{v}` for `{key}`", self.source)
            }),
        }
    }
}
