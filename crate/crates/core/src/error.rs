use thiserror::Error;

/// Errors raised by the matrix kernels, matrix functions and means.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular to working precision (pivot {pivot:.3e} below threshold {threshold:.3e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix is not accretive (min eigenvalue of real part {min_real_part:.3e})")]
    NotAccretive { min_real_part: f64 },

    #[error("argument out of domain: {0}")]
    DomainError(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("monotone representation {name} failed validation: {reason}")]
    InvalidRepresentation { name: String, reason: String },

    #[error("non-finite value: {0}")]
    NonFinite(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SingularMatrix { .. } => "SingularMatrix",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotAccretive { .. } => "NotAccretive",
            Error::DomainError(_) => "DomainError",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::InvalidRepresentation { .. } => "InvalidRepresentation",
            Error::NonFinite(_) => "NonFinite",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
