use thiserror::Error;

/// Errors produced by the factorization and kernel routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {index} fell below tolerance)")]
    NotPositiveDefinite { index: usize },

    #[error("triangular factor is singular at diagonal {index}")]
    SingularTriangular { index: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("matrix is not symmetric (max asymmetry {max_asym:.3e})")]
    NotSymmetric { max_asym: f64 },

    #[error("matrix is numerically rank deficient (achieved rank {achieved})")]
    RankDeficient { achieved: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
