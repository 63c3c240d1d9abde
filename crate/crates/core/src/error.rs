//! Error type shared by the whole crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A triplet refers to a row or column outside the matrix.
    #[error("triplet ({row}, {col}) out of range for a {nrows}x{ncols} matrix")]
    TripletOutOfRange {
        row: usize,
        col: usize,
        nrows: usize,
        ncols: usize,
    },

    /// Two operands do not have compatible dimensions.
    #[error(
        "{context}: dimensions {left_rows}x{left_cols} and {right_rows}x{right_cols} do not match"
    )]
    DimensionMismatch {
        context: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// An operation that requires a square matrix received a rectangular one.
    #[error("{context}: matrix is {nrows}x{ncols}, expected square")]
    NotSquare {
        context: &'static str,
        nrows: usize,
        ncols: usize,
    },

    /// A configuration value is out of its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A dense operation was requested above the configured dense cap.
    #[error("dense cap exceeded: n = {n} but cap = {cap}")]
    DenseCapExceeded { n: usize, cap: usize },

    /// Transitive closure was requested above the configured closure cap.
    #[error("closure cap exceeded: n = {n} but cap = {cap}")]
    ClosureCapExceeded { n: usize, cap: usize },

    /// A factorization hit a pivot below the singularity threshold.
    #[error("matrix is numerically singular (pivot {pivot:.3e} at column {col})")]
    Singular { col: usize, pivot: f64 },

    /// The Newton line search could not make progress.
    #[error("line search stalled at Newton step {step} (|F| = {fnorm:.6e})")]
    LineSearchFailed { step: usize, fnorm: f64 },

    /// A Matrix Market file could not be parsed.
    #[error("{path}:{line}: {message}")]
    MarketParse {
        path: String,
        line: usize,
        message: String,
    },

    /// A sequence manifest could not be read or is inconsistent.
    #[error("manifest {path}: {message}")]
    Manifest { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad
    /// configuration or I/O. The command line uses this split for exit codes.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. } | Error::LineSearchFailed { .. }
        )
    }
}
