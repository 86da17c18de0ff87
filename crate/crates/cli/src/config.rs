use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "QUTIL_SEED";

/// How expectation values and samples are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    Exact,
    Shots,
    Noisy,
}

/// Run parameters shared by all subcommands. Every field is optional in a
/// config file; flags take precedence over the file, the file over defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub app: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qubits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hamiltonian: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<SimMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantum: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classical: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub circuit: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub natives: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub device_qubits: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Vec<PathBuf>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweeps: Option<Vec<PathBuf>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::config(format!("malformed config {}: {e}", path.display())))
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overlay(mut self, flags: &RunConfig) -> Self {
        overlay!(self, flags; app, sizes, variable, qubits, layers, points, iterations, dataset,
            hamiltonian, mode, shots, noise, seed, quantum, classical, circuit, topology, natives,
            device_qubits, factor, outcomes, sweeps, out);
        self
    }

    /// Flag, then config file, then `QUTIL_SEED`, then [`DEFAULT_SEED`].
    pub fn resolve_seed(&mut self) -> CliResult<u64> {
        let seed = match self.seed {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::config(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?,
                Err(_) => DEFAULT_SEED,
            },
        };
        self.seed = Some(seed);
        Ok(seed)
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("qutil-out"))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("malformed {what} {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = RunConfig { layers: Some(3), seed: Some(1), ..Default::default() };
        let flags = RunConfig { seed: Some(9), ..Default::default() };
        let merged = file.overlay(&flags);
        assert_eq!(merged.layers, Some(3));
        assert_eq!(merged.seed, Some(9));
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"layrs": 2}"#).is_err());
        let c: RunConfig = serde_json::from_str(r#"{"mode": "noisy", "noise": 0.01}"#).unwrap();
        assert_eq!(c.mode, Some(SimMode::Noisy));
    }

    #[test]
    fn schema_lists_every_config_field() {
        let schema: serde_json::Value =
            serde_json::from_str(include_str!("../../../schemas/qutil.schema.json")).unwrap();
        let props = schema["$defs"]["RunConfig"]["properties"].as_object().unwrap();
        let full = RunConfig {
            app: Some(String::new()),
            sizes: Some(vec![]),
            variable: Some(String::new()),
            qubits: Some(1),
            layers: Some(1),
            points: Some(2),
            iterations: Some(1),
            dataset: Some(PathBuf::new()),
            hamiltonian: Some(PathBuf::new()),
            mode: Some(SimMode::Exact),
            shots: Some(1),
            noise: Some(0.0),
            seed: Some(0),
            quantum: Some(PathBuf::new()),
            classical: Some(PathBuf::new()),
            circuit: Some(PathBuf::new()),
            topology: Some(String::new()),
            natives: Some(String::new()),
            device_qubits: Some(1),
            factor: Some(1.0),
            outcomes: Some(vec![]),
            sweeps: Some(vec![]),
            out: Some(PathBuf::new()),
        };
        let value = serde_json::to_value(&full).unwrap();
        let fields: Vec<&String> = value.as_object().unwrap().keys().collect();
        let documented: Vec<&String> = props.keys().collect();
        assert_eq!(fields, documented);
    }
}
