use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix or subsystem dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Input to the eigensolver is not Hermitian within tolerance.
    #[error("matrix is not Hermitian within tolerance (max asymmetry {max_asymmetry:.3e}, tol {tol:.3e})")]
    NotHermitian { max_asymmetry: f64, tol: f64 },

    /// Jacobi sweeps did not reduce the off-diagonal norm in time.
    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    /// A parameter lies outside its admissible domain.
    #[error("parameter out of domain: {0}")]
    Domain(String),

    /// A matrix that must be a density operator fails validation.
    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    /// A sequence that must be sorted ascending is not.
    #[error("input not sorted ascending: {0}")]
    Ordering(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
