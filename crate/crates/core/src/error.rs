use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow computing {what} (d = {degree}, p = {dimension})")]
    Overflow {
        what: &'static str,
        degree: u64,
        dimension: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite coordinate in point {index}")]
    NonFinite { index: usize },

    #[error("mesh has {found} points but degree {degree} in dimension {dimension} needs at least {needed}")]
    TooFewPoints {
        found: usize,
        needed: u64,
        degree: usize,
        dimension: usize,
    },

    #[error("mesh cardinality {0} exceeds the configured cap {1}")]
    MeshTooLarge(u128, usize),

    #[error("degenerate pivot at step {step}: |residual| = {residual:e} (reference scale {scale:e})")]
    Degenerate {
        step: usize,
        residual: f64,
        scale: f64,
    },

    #[error("singular node set: the Vandermonde determinant vanishes")]
    Singular,

    #[error("factor sequences too short: need {required_left} left and {required_right} right points, have {have_left} and {have_right}")]
    InsufficientFactor {
        required_left: usize,
        required_right: usize,
        have_left: usize,
        have_right: usize,
    },

    #[error("capacity exhausted: state holds {0} basis columns")]
    CapacityExhausted(usize),

    #[error("failed to parse {path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
