//! Settings read from a JSON file; command-line flags win over file values.

use std::path::{Path, PathBuf};

use khinchin_core::distmodel::ModelKind;
use khinchin_core::stats::StatOptions;
use khinchin_core::{LogBase, NumberSpec, SpeedMetric};
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every field is optional; a subcommand reads only the ones it uses.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub numbers: Vec<NumberSpec>,
    pub terms: Option<usize>,
    pub models: Vec<ModelKind>,
    pub metrics: Vec<SpeedMetric>,
    pub boundaries: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub seeds: Vec<u64>,
    pub digits: Option<u32>,
    pub range: Option<[usize; 2]>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub log_base: Option<LogBase>,
    pub stats: Option<StatOptions>,
}

impl ExperimentConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
    }

    /// Seeds from `seed` and `seeds`, in that order.
    pub fn all_seeds(&self) -> Vec<u64> {
        self.seed.into_iter().chain(self.seeds.iter().copied()).collect()
    }
}

/// Flag value if given, else the file's, else `default`.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Speed and `r_n` log base: flag, then `KHINCHIN_LOG_BASE`, then file, then e.
pub fn speed_log_base(flag: Option<LogBase>, file: Option<LogBase>) -> Result<LogBase, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(LogBase::ENV_VAR) {
        Ok(v) => LogBase::parse(&v).map_err(|e| CliError::Usage(format!("{}: {e}", LogBase::ENV_VAR))),
        Err(_) => Ok(file.unwrap_or_default()),
    }
}

pub fn parse_log_base(s: &str) -> Result<LogBase, String> {
    LogBase::parse(s).map_err(|e| e.to_string())
}

pub fn parse_number(s: &str) -> Result<NumberSpec, String> {
    NumberSpec::parse(s).map_err(|e| e.to_string())
}

pub fn parse_metric(s: &str) -> Result<SpeedMetric, String> {
    s.parse::<SpeedMetric>().map_err(|e| e.to_string())
}
