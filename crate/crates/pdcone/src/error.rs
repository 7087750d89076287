//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide error enum.
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix dimensions do not agree (or are outside the supported range).
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Dimension outside the supported range 1..=16.
    #[error("dimension {dim} outside supported range 1..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },

    /// A matrix expected to be symmetric positive definite is not.
    #[error("matrix is not positive definite: min eigenvalue {min_eig:e} below floor {floor:e}")]
    NotPositiveDefinite { min_eig: f64, floor: f64 },

    /// Input matrix data is too far from symmetric to symmetrize silently.
    #[error("matrix is not symmetric: relative asymmetry {asymmetry:e} exceeds {limit:e}")]
    NotSymmetric { asymmetry: f64, limit: f64 },

    /// The Jacobi eigensolver did not reach its tolerance in the sweep budget.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diag:e})")]
    EigNonConvergence { sweeps: usize, off_diag: f64 },

    /// Exact rational arithmetic overflowed i64.
    #[error("rational arithmetic overflow in {op}")]
    RationalOverflow { op: &'static str },

    /// A rational value failed validation (zero/negative denominator, out of range).
    #[error("invalid rational value: {reason}")]
    InvalidRational { reason: String },

    /// Measure weights are invalid (non-positive, or do not sum to one).
    #[error("invalid measure: {reason}")]
    InvalidMeasure { reason: String },

    /// A size cap was exceeded (support size, replication order, and similar).
    #[error("{what} = {got} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    /// A documented precondition was violated by the caller.
    #[error("precondition violated: {reason}")]
    Precondition { reason: String },

    /// An iterative solver ran out of iterations before meeting its tolerance.
    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    SolverNonConvergence { iterations: usize, residual: f64 },

    /// I/O failure while reading or writing files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
