use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("frequency must be a positive integer, got {0}")]
    InvalidFrequency(i128),

    #[error("frequency of multi-index {0} does not fit in 64 bits")]
    FrequencyOverflow(String),

    #[error("prime table limit {limit} exceeded (needed primes up to {needed})")]
    PrimeBound { needed: u64, limit: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite coefficient entry")]
    NonFinite,

    #[error("dilation radius must lie in (0, 1], got {0}")]
    InvalidRadius(f64),

    #[error("exponent p must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),

    #[error("shift epsilon must be non-negative, got {0}")]
    InvalidShift(f64),

    #[error("coordinate {index} has modulus {modulus}, outside the evaluation domain")]
    OutsideDomain { index: usize, modulus: f64 },

    #[error("entry {index} has modulus {modulus}, expected a unimodular value")]
    NotUnimodular { index: usize, modulus: f64 },

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NotConverged { iterations: usize, residual: f64 },

    #[error("grid resolution {got} points per variable is insufficient, need at least {needed}")]
    InsufficientGrid { needed: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed series file: {0}")]
    Malformed(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
