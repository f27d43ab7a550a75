use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the computational modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: &'static str },

    #[error("zero denominator at offset {offset}")]
    ZeroDenominator { offset: usize },

    #[error("invalid branch parametrization: {0}")]
    InvalidBranch(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("truncation {available} is too small, at least {needed} is required")]
    InsufficientTruncation { needed: u32, available: u32 },

    #[error("|v| - h(v) did not stabilize along the diagonal of branches {branches:?} within n <= {bound}")]
    NonStabilizing { branches: Vec<usize>, bound: u32 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("normalized motivic series is not a polynomial: nonzero coefficient at {at:?}")]
    PolynomialityViolation { at: Vec<i64> },

    #[error("finite support expected, nonzero coefficient at {at:?}")]
    SupportViolation { at: Vec<i64> },

    #[error("box {corner:?} is too small: {reason}")]
    BoxTooSmall { corner: Vec<i64>, reason: String },

    #[error("step pattern {pattern:?} at {at:?} matches none of the five two-branch cases")]
    UnclassifiablePattern { at: Vec<i64>, pattern: [u64; 3] },

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

impl Error {
    /// Stable short name used by front ends when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
            Error::InvalidBranch(_) => "InvalidBranch",
            Error::InvalidCurve(_) => "InvalidCurve",
            Error::InsufficientTruncation { .. } => "InsufficientTruncation",
            Error::NonStabilizing { .. } => "NonStabilizing",
            Error::Consistency(_) => "ConsistencyError",
            Error::PolynomialityViolation { .. } => "PolynomialityViolation",
            Error::SupportViolation { .. } => "SupportViolation",
            Error::BoxTooSmall { .. } => "BoxTooSmall",
            Error::UnclassifiablePattern { .. } => "UnclassifiablePattern",
            Error::InvalidMatroid(_) => "InvalidMatroid",
            Error::Dimension(_) => "DimensionMismatch",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
