//! Error type shared by every module of the toolkit.

use thiserror::Error;

/// All failure modes of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("shape mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("form is not homogeneous: terms of degree {0} and {1}")]
    NotHomogeneous(u32, u32),
    #[error("variable x{index} out of range for ambient dimension {n}")]
    WrongVariable { index: usize, n: usize },
    #[error("budget exceeded: needs {needed}, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("coordinates are all zero")]
    ZeroPoint,
    #[error("point does not lie on the scheme")]
    PointNotOnScheme,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("subscheme has a non-reduced point")]
    NonReducedSubscheme,
    #[error("canonical twist {0} is negative")]
    NegativeCanonicalTwist(i64),
    #[error("point not on curve")]
    PointNotOnCurve,
    #[error("projection center meets the curve non-reducedly")]
    NonReducedCenterIntersection,
    #[error("curve is singular at a point of the projection center")]
    SingularAtCenter,
    #[error("degrees must be ascending and at least 2")]
    DegreeOrderViolation,
    #[error("out of range: {0}")]
    RangeViolation(String),
    #[error("instance format: {0}")]
    InstanceFormat(String),
    #[error("instance generation failed after {0} attempts")]
    GenerationFailed(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
