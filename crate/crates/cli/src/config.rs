//! TOML configuration. Every key is optional; command-line flags win.
//!
//! ```toml
//! input = "data.ttl"
//! output = "quality.trig"
//! format = "trig"
//! graph_iri = "http://example.org/quality"
//! computed_on = "http://example.org/dataset"
//! metrics = ["dqm:DatatypeConsistencyMetric"]
//! extensions = ["my-metrics.ttl"]
//! seed = 42
//! clock = "2014-05-01T00:00:00Z"
//! base_stars = 5
//!
//! [probe]
//! connect_timeout_ms = 5000
//! request_timeout_ms = 10000
//! max_parallel_probes = 4
//! max_sample_size = 20
//! retry_count = 0
//! endpoint = "http://example.org/sparql"
//!
//! [ranking]
//! normalization = "min-max-within-cohort"   # or "none"
//! missing_policy = "exclude"                 # or "score-zero"
//! [ranking.weights]
//! "dqm:LabeledResourceMetric" = 1.0
//!
//! [thresholds]
//! "dqm:DatatypeConsistencyMetric" = 0.9
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qualcube::analytics::{MissingPolicy, Normalization};
use serde::Deserialize;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub format: Option<String>,
    pub graph_iri: Option<String>,
    pub computed_on: Option<String>,
    pub metrics: Option<Vec<String>>,
    #[serde(default)]
    pub extensions: Vec<PathBuf>,
    pub seed: Option<u64>,
    pub clock: Option<String>,
    pub base_stars: Option<u8>,
    #[serde(default)]
    pub probe: ProbeConfig,
    pub ranking: Option<RankingConfig>,
    #[serde(default)]
    pub thresholds: BTreeMap<String, f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    pub connect_timeout_ms: Option<u64>,
    pub request_timeout_ms: Option<u64>,
    pub max_parallel_probes: Option<usize>,
    pub max_sample_size: Option<usize>,
    pub retry_count: Option<u32>,
    pub endpoint: Option<String>,
}

/// Also the schema of a `--weights` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankingConfig {
    #[serde(default)]
    pub normalization: Normalization,
    #[serde(default)]
    pub missing_policy: MissingPolicy,
    #[serde(default)]
    pub weights: BTreeMap<String, f64>,
}

/// Schema of a `--thresholds` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdsFile {
    pub base_stars: Option<u8>,
    #[serde(default)]
    pub thresholds: BTreeMap<String, f64>,
}

#[derive(Debug)]
pub enum ConfigError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Io(p, e) => write!(f, "cannot read {}: {e}", p.display()),
            ConfigError::Parse(p, e) => write!(f, "invalid configuration in {}: {e}", p.display()),
        }
    }
}

pub fn load_toml<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_owned(), e))?;
    toml::from_str(&text).map_err(|e| ConfigError::Parse(path.to_owned(), e.message().to_owned()))
}
