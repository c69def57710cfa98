use thiserror::Error;

/// Errors shared across the toolkit.
///
/// Variants are grouped by how a caller should react: `Validation` means the
/// inputs violate a documented precondition, `Numerical` means an iteration or
/// decomposition failed on otherwise valid inputs, and `Io` wraps file-format
/// problems.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coefficient has imaginary part {imag:.3e} exceeding 1e-12")]
    NonRealCoefficient { imag: f64 },

    #[error("matrix is not Hermitian: max deviation {0:.3e}")]
    NonHermitian(f64),

    #[error("dissipator has eigenvalue {0:.3e} below -1e-10")]
    NegativeRate(f64),

    #[error("invalid argument: {0}")]
    Validation(String),

    #[error("linear system is rank deficient: rank {rank} < {expected}")]
    RankDeficientSystem { rank: usize, expected: usize },

    #[error("iteration failed to converge: {0}")]
    NoConvergence(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("non-positive value in power-law refit: {0}")]
    NonPositiveValue(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed file: {0}")]
    Format(String),
}

impl From<serde_json::Error> for CoreError {
    fn from(e: serde_json::Error) -> Self {
        CoreError::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
