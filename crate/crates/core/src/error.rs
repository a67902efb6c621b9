use thiserror::Error;

/// Errors produced by input validation and I/O across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("component {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("vector must have at least one component")]
    Empty,

    #[error("scale must be a positive finite real, got {value}")]
    InvalidScale { value: f64 },

    #[error("clip level must be finite, got {value}")]
    NonFiniteThreshold { value: f64 },

    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("record sequence is empty")]
    EmptyRecords,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible projection at n={n}, point {index}: {detail}")]
    Infeasible {
        n: usize,
        index: usize,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
