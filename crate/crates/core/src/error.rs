use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} requires n >= {min_n}, got n = {n}")]
    BelowMinimum { what: String, n: u64, min_n: u64 },

    #[error(
        "product did not converge within {terms} terms: partial value {partial}, tail bound {tail_bound}"
    )]
    NonConvergence {
        partial: f64,
        tail_bound: f64,
        terms: u64,
    },

    #[error("incompatible bounds {a} and {b}: {reason}")]
    IncompatibleBounds { a: String, b: String, reason: String },

    #[error("unknown bound id `{0}`")]
    UnknownBound(String),
}
