use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

/// Written as `manifest.json` next to the outputs of every run.
#[derive(Debug, Serialize)]
pub struct RunManifest<'a, O: Serialize> {
    pub instance: Option<String>,
    pub command: &'a str,
    pub options: &'a O,
    pub output_dir: &'a Path,
    pub timestamp: String,
    pub tool_version: &'static str,
}

pub fn write_manifest<O: Serialize>(
    dir: &Path,
    command: &str,
    instance: Option<String>,
    options: &O,
) -> Result<PathBuf> {
    let manifest = RunManifest {
        instance,
        command,
        options,
        output_dir: dir,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        tool_version: env!("CARGO_PKG_VERSION"),
    };
    let path = dir.join("manifest.json");
    std::fs::write(&path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}
