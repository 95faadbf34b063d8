use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("invalid q: {0}")]
    InvalidQ(String),

    #[error("rational magnitude exceeds limit: {bits} bits > {limit}")]
    MagnitudeOverflow { bits: u64, limit: u64 },

    #[error("vanishing denominator: lower parameter {param} gives ({param};q)_{index} = 0")]
    VanishingDenominator { param: String, index: usize },

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("divergent series: {0}")]
    Divergent(String),

    #[error("no convergence after {0} terms")]
    NoConvergence(usize),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
