//! Error type shared by all library operations.

use thiserror::Error;

/// Everything the library can report as a mathematical or structural failure.
///
/// Parsing failures for matrix files live in [`crate::matfile::ParseError`];
/// this enum covers violated preconditions of the numerical operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    DimensionMismatch {
        context: &'static str,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at ({row},{col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("matrix is not symmetric (max asymmetry {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("matrix is not positive definite (nonpositive pivot at step {pivot})")]
    NotPositiveDefinite { pivot: usize },

    #[error("singular matrix in {context}")]
    Singular { context: &'static str },

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    EigenDidNotConverge { sweeps: usize, off_norm: f64 },

    #[error("degenerate subspace: spanning rows have rank zero")]
    DegenerateSubspace,

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("rows are linearly dependent in {context}")]
    DependentRows { context: &'static str },

    #[error("rank-deficient matrix in {context}: expected rank {expected}, got {got}")]
    RankDeficient {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("orthogonal complement is the zero space (subspace fills E_{ambient})")]
    ZeroComplement { ambient: usize },

    #[error("singular restriction: restricted eigenvalue {eigenvalue:e} within zero tolerance")]
    SingularRestriction { eigenvalue: f64 },

    #[error("inconsistent canonical layout: {detail}")]
    InvalidCanonicalSpec { detail: String },

    #[error("principal value {value} outside [0,1]")]
    InvalidPrincipalValue { value: f64 },

    #[error("hypothesis violated: {detail}")]
    HypothesisViolation { detail: String },

    #[error("internal postcondition failed: {detail}")]
    Internal { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
