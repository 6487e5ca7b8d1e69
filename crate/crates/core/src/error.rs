//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Views (or labels) disagree on the number of samples.
    #[error("row alignment: {0}")]
    Alignment(String),

    /// A cell of an input file could not be parsed as a number.
    #[error("parse error in {path} at row {row}, column {col}: {msg}")]
    Parse {
        path: String,
        row: usize,
        col: usize,
        msg: String,
    },

    /// A subset request exceeds what a cluster can supply.
    #[error("cluster capacity: {0}")]
    Capacity(String),

    /// An argument is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The input carries no usable signal (e.g. zero variance).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The perplexity target cannot be met for a sample.
    #[error("perplexity calibration: {0}")]
    Calibration(String),

    /// Gradient descent produced non-finite coordinates.
    #[error("optimization diverged at iteration {iteration}")]
    Optimization { iteration: usize },

    /// An eigen/linear solve failed; carries a residual report.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The quantity is undefined for this input (e.g. silhouette of one cluster).
    #[error("undefined for this input: {0}")]
    Undefined(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable exit-code category used by the CLI: 2 = bad parameter,
    /// 3 = data problem, 4 = numeric failure, 5 = io.
    pub fn category(&self) -> i32 {
        match self {
            Error::Parameter(_) => 2,
            Error::Alignment(_) | Error::Parse { .. } | Error::Capacity(_) => 3,
            Error::DegenerateInput(_)
            | Error::Calibration(_)
            | Error::Optimization { .. }
            | Error::Numerical(_)
            | Error::Undefined(_) => 4,
            Error::Io(_) => 5,
        }
    }
}
