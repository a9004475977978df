use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity {n} exceeds the configured cap {cap}")]
    ArityTooLarge { n: u32, cap: u32 },

    #[error("point index {index} out of range for arity {n}")]
    PointOutOfRange { index: usize, n: u32 },

    #[error("coordinate {coord} out of range 1..={n}")]
    CoordinateOutOfRange { coord: usize, n: u32 },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: u32, right: u32 },

    #[error("level {level} out of range 0..={n}")]
    LevelOutOfRange { level: u32, n: u32 },

    #[error("table has {got} entries, expected {expected}")]
    TableLength { got: usize, expected: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("not monotone: raising x_{coord} at point {point} lowers the value")]
    NotMonotone { point: usize, coord: usize },

    #[error("majority is only defined here for odd arity, got {0}")]
    EvenMajority(u32),

    #[error("function is constant")]
    ConstantFunction,

    #[error("expected unit 2-norm, got squared norm {0}")]
    NotUnitNorm(f64),

    #[error("invalid norm exponent {0}: must be >= 1")]
    InvalidExponent(f64),

    #[error("exponent q ({q}) must be >= p ({p})")]
    ExponentOrder { p: f64, q: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
