use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Output directory; every file is written to a temporary sibling and
/// renamed into place.
pub struct OutDir {
    root: PathBuf,
    written: Vec<String>,
}

impl OutDir {
    pub fn create(root: PathBuf) -> CliResult<Self> {
        fs::create_dir_all(&root)
            .map_err(|e| CliError::runtime(format!("cannot create {}: {e}", root.display())))?;
        Ok(OutDir { root, written: Vec::new() })
    }

    pub fn write_text(&mut self, name: &str, text: &str) -> CliResult<PathBuf> {
        let path = write_atomic(&self.root, name, text.as_bytes())?;
        self.written.push(name.to_string());
        Ok(path)
    }

    pub fn write_json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> CliResult<PathBuf> {
        let mut text = serde_json::to_string_pretty(value).map_err(CliError::runtime)?;
        text.push('\n');
        self.write_text(name, &text)
    }

    /// Writes `manifest.json` listing the config, seeds and every file
    /// written so far.
    pub fn finish(mut self, command: &str, config: &RunConfig, seeds: &[(String, u64)]) -> CliResult<Vec<String>> {
        let mut artifacts = self.written.clone();
        artifacts.sort();
        let manifest = Manifest {
            tool: "qutil",
            format_version: FORMAT_VERSION,
            command,
            versions: Versions { qutil_cli: env!("CARGO_PKG_VERSION"), qutil_core: qutil_core::VERSION },
            config,
            seeds: seeds.iter().map(|(k, v)| (k.as_str(), *v)).collect(),
            artifacts: &artifacts,
        };
        self.write_json("manifest.json", &manifest)?;
        artifacts.push("manifest.json".to_string());
        Ok(artifacts)
    }
}

pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
    let path = dir.join(name);
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| CliError::runtime(format!("cannot create {}: {e}", parent.display())))?;
    }
    let tmp = path.with_file_name(format!(".{}.tmp", path.file_name().unwrap_or_default().to_string_lossy()));
    let io = |e: std::io::Error| CliError::runtime(format!("cannot write {}: {e}", path.display()));
    let mut f = fs::File::create(&tmp).map_err(io)?;
    f.write_all(bytes).map_err(io)?;
    f.sync_all().map_err(io)?;
    fs::rename(&tmp, &path).map_err(io)?;
    Ok(path)
}

#[derive(Serialize)]
struct Versions {
    qutil_cli: &'static str,
    qutil_core: &'static str,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    format_version: u32,
    command: &'a str,
    versions: Versions,
    config: &'a RunConfig,
    seeds: std::collections::BTreeMap<&'a str, u64>,
    artifacts: &'a [String],
}
