use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range [{lo}, {hi}): bounds must be finite with lo < hi")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed bounds at coordinate {index}: lower {lower} > upper {upper}")]
    MalformedBounds { index: usize, lower: f64, upper: f64 },

    #[error("discrete value set for coordinate {0} is empty")]
    EmptyDiscreteSet(usize),

    #[error("invalid problem definition: {0}")]
    InvalidProblem(String),

    #[error("unknown problem `{name}`; available: {}", available.join(", "))]
    UnknownProblem { name: String, available: Vec<String> },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("stiffness matrix is singular after support elimination (mechanism or insufficient supports)")]
    SingularStiffness,

    #[error(
        "measured strain for gauge {gauge} in load case {load_case} is zero; \
         regenerate the gauge layout or load cases so every measured strain is non-zero"
    )]
    ZeroMeasuredStrain { gauge: usize, load_case: usize },

    #[error("invalid frame geometry: {0}")]
    Geometry(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("report format error: {0}")]
    Report(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
