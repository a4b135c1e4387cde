use thiserror::Error;

/// Errors raised by frame construction, spectral calculus and the approximation schemes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal residual {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },

    #[error("spectral function is undefined at eigenvalue {eigenvalue:e}")]
    Domain { eigenvalue: f64 },

    #[error("not a frame: fractional negative power undefined (lambda_min = {lambda_min:e})")]
    NotAFrame { lambda_min: f64 },

    #[error("invalid frame bounds (A, B) = ({a}, {b}): {reason}")]
    InvalidBounds { a: f64, b: f64, reason: String },

    #[error("operator is not positive definite (lambda_min = {lambda_min:e})")]
    NotPositive { lambda_min: f64 },

    #[error("operator does not commute with the frame operator (commutator norm {commutator:e} > {limit:e})")]
    NonCommuting { commutator: f64, limit: f64 },

    #[error("binomial scheme requires B < 3A for convergence, got A = {a}, B = {b}")]
    BinomialDivergent { a: f64, b: f64 },

    #[error("invalid Gabor parameters: {0}")]
    InvalidGabor(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
