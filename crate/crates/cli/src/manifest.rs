use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

/// Everything needed to re-run a command and get the same CSV bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub zeros_source: String,
    pub zeros_used: usize,
    pub tool_version: String,
}

impl RunManifest {
    pub fn new(subcommand: impl Into<String>) -> Self {
        Self {
            subcommand: subcommand.into(),
            parameters: BTreeMap::new(),
            zeros_source: String::new(),
            zeros_used: 0,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn zeros(mut self, source: &str, used: usize) -> Self {
        self.zeros_source = source.to_string();
        self.zeros_used = used;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// `row19.csv` → `row19.manifest.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("manifest.json")
}
