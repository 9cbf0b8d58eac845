use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid membership function: {0}")]
    InvalidMembership(String),

    #[error("invalid partition `{name}`: {reason}")]
    InvalidPartition { name: String, reason: String },

    #[error("invalid rule base: {0}")]
    InvalidRuleBase(String),

    #[error("condition vector has {got} components, rule base expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no rule is active at {x:?} (activation total {total:e})")]
    UnsupportedRegion { x: Vec<f64>, total: f64 },

    #[error("rule {rule} conclusion diverged to {value}")]
    Diverged { rule: usize, value: f64 },

    #[error("fuzzy set has no mass; center of area is undefined")]
    ZeroMass,

    #[error("invalid fuzzy set: {0}")]
    InvalidFuzzySet(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("model is incompatible: {0}")]
    ModelMismatch(String),

    #[error("{path}: missing column `{column}`")]
    MissingColumn { path: PathBuf, column: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("{path}: {source}")]
    Toml {
        path: PathBuf,
        #[source]
        source: toml::de::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        Error::Csv {
            path: path.into(),
            source,
        }
    }
}
