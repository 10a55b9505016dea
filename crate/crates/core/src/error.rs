use std::path::PathBuf;

/// Errors produced while validating inputs or running a solve.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("signal must contain at least one sample")]
    EmptySignal,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },
    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },
    #[error("all weights are zero")]
    AllZeroWeights,
    #[error("regularization parameter must be finite and nonnegative, got {0}")]
    InvalidAlpha(f64),
    #[error("grid is not strictly ascending at index {index}")]
    NotAscending { index: usize },
    #[error("grid value {value} at index {index} is not a canonical angle in (-pi, pi]")]
    NonCanonicalAngle { index: usize, value: f64 },
    #[error("quantization needs at least 2 levels, got {0}")]
    InvalidLevels(usize),
    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),
    #[error("enumeration needs {states} states, guard is {max}")]
    TooManyStates { states: u128, max: u128 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
