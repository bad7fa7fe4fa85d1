use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::FORMAT_VERSION;
use crate::algorithms::{builtin, AlgorithmError, AlgorithmSpec};
use crate::engine::{validate_initial, EngineError, EnginePolicy};
use crate::geometry::{Cell, Direction, Shape};
use crate::model::{StateLabel, SystemConfig};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error("invalid configuration: {0}")]
    Validation(#[from] EngineError),
}

/// One particle of the initial configuration. Ids are assigned in list
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleSpec {
    pub state: String,
    pub shape: Shape,
    pub head: [i64; 2],
    pub orientation: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub format_version: u32,
    pub algorithm: String,
    /// Falls back to the CLI flag or `AMOEBA_SIM_SEED` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub rounds: u64,
    #[serde(default)]
    pub policy: EnginePolicy,
    pub particles: Vec<ParticleSpec>,
}

impl RunConfig {
    pub fn from_system(algorithm: &str, sys: &SystemConfig) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            algorithm: algorithm.to_string(),
            seed: None,
            rounds: 0,
            policy: EnginePolicy::default(),
            particles: sys
                .particles()
                .iter()
                .map(|p| ParticleSpec {
                    state: p.state.to_string(),
                    shape: p.shape,
                    head: p.head.into(),
                    orientation: p.orientation,
                })
                .collect(),
        }
    }

    /// The initial configuration, without any algorithm-specific checks.
    pub fn system(&self) -> Result<SystemConfig, ConfigError> {
        SystemConfig::from_unnumbered(self.particles.iter().map(|p| {
            (
                StateLabel::new(&p.state),
                p.shape,
                Cell::from(p.head),
                p.orientation,
            )
        }))
        .map_err(|e| ConfigError::Validation(e.into()))
    }

    /// Resolves the algorithm and checks the initial configuration under the
    /// configured strictness.
    pub fn validate(&self) -> Result<(SystemConfig, AlgorithmSpec), ConfigError> {
        let alg = builtin(&self.algorithm)?;
        let sys = self.system()?;
        validate_initial(&sys, &alg, self.policy.strict_init)?;
        Ok((sys, alg))
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if config.format_version != FORMAT_VERSION {
        return Err(ConfigError::Version(config.format_version));
    }
    Ok(config)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig, ConfigError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

pub fn emit_config(config: &RunConfig) -> String {
    let mut out = serde_json::to_string_pretty(config).expect("config serializes");
    out.push('\n');
    out
}

pub fn save_config(path: impl AsRef<Path>, config: &RunConfig) -> std::io::Result<()> {
    fs::write(path, emit_config(config))
}
