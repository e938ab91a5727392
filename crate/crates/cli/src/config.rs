//! Optional JSON run configuration. A config file mirrors the command-line
//! surface; explicit flags override file values.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Optional command name; when present it must match the invoked
    /// subcommand.
    pub command: Option<String>,
    pub data: Option<PathBuf>,
    pub family: Option<String>,
    pub baseline: Option<String>,
    pub methods: Option<Vec<String>>,
    pub models: Option<Vec<String>>,
    pub params: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub seed: Option<u64>,
    pub starts: Option<usize>,
    pub tol: Option<f64>,
    pub max_iterations: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub replications: Option<usize>,
    pub truth: Option<Vec<f64>>,
    pub moments: Option<u32>,
    pub renyi: Option<Vec<f64>>,
    pub mgf_t: Option<Vec<f64>>,
    pub quad_rel_tol: Option<f64>,
    pub quad_abs_tol: Option<f64>,
    pub points: Option<usize>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>, command: &str) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let config: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("invalid config {}: {e}", path.display())))?;
        if let Some(cmd) = &config.command {
            if cmd != command {
                return Err(CliError::Config(format!(
                    "config is for command `{cmd}`, invoked `{command}`"
                )));
            }
        }
        Ok(config)
    }
}
