use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Written next to every output file as `<output>.manifest.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Full argument vector of the invocation.
    pub command: Vec<String>,
    pub subcommand: String,
    pub model: Option<String>,
    /// Shear ranges, level counts and similar inputs.
    pub parameters: BTreeMap<String, Value>,
    /// Settings changed from their defaults, by flag or config file.
    pub overrides: BTreeMap<String, String>,
    pub config_file: Option<String>,
    pub outputs: Vec<String>,
    pub version: String,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        Self {
            command: std::env::args().collect(),
            subcommand: subcommand.to_string(),
            model: None,
            parameters: BTreeMap::new(),
            overrides: BTreeMap::new(),
            config_file: None,
            outputs: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}

/// Writes `contents` to `path` and the manifest beside it.
pub fn write_with_manifest(path: &Path, contents: &str, manifest: &mut RunManifest) -> anyhow::Result<PathBuf> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
    manifest.outputs.push(path.display().to_string());
    let mpath = manifest_path(path);
    let mut json = serde_json::to_string_pretty(manifest)?;
    json.push('\n');
    std::fs::write(&mpath, json).with_context(|| format!("writing {}", mpath.display()))?;
    Ok(mpath)
}
