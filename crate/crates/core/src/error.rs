use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dim(String),
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("expected a unit vector, got norm {norm:.3e} ({what})")]
    Norm { what: String, norm: f64 },
    #[error("matrix is not Hermitian: asymmetry {asymmetry:.3e} exceeds {limit:.3e}")]
    Hermiticity { asymmetry: f64, limit: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate sample after {attempts} attempts: {reason}")]
    DegenerateSample { attempts: usize, reason: String },
    #[error("insufficient anchors: need {needed} product vectors, got {available}")]
    Anchor { needed: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
