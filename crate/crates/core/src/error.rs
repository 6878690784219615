use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the admissible domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid mode index {0}: modes start at n = 1")]
    InvalidMode(u32),

    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("zero-norm state: {0}")]
    ZeroNorm(String),

    #[error("no eigenvalue bracket found: {0}")]
    BracketNotFound(String),

    #[error("no convergence after {iterations} iterations: {what}")]
    NonConvergence { what: String, iterations: usize },

    #[error("empty range: {0}")]
    EmptyRange(String),

    #[error("malformed table: {0}")]
    Decode(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
