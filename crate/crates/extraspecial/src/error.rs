//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p must be one of 2, 3, 5, 7 (got {0})")]
    UnsupportedPrime(u32),

    #[error("rank must be at least 1 (got {0})")]
    InvalidRank(u32),

    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },

    #[error("operands live in different variable contexts ({left} vs {right})")]
    ContextMismatch { left: String, right: String },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable `{name}` at byte {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),

    #[error("input must be homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("{0}")]
    Invalid(String),

    /// A solve the underlying theory promises to be consistent came back
    /// empty.  The certificate is a left null vector of the system matrix
    /// that pairs nontrivially with the right-hand side.
    #[error("inconsistent system where a solution is promised: {context}")]
    HardUnsat {
        context: String,
        certificate: Vec<u8>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
