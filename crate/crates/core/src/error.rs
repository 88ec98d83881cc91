use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid fraction `{token}`: {reason}")]
    InvalidFraction { token: String, reason: String },

    #[error("invalid vector `{token}`: {reason}")]
    InvalidVector { token: String, reason: String },

    #[error("continued fraction has a vanishing convergent")]
    DivisionByZero,

    #[error("arithmetic overflow while evaluating a continued fraction")]
    Overflow,

    #[error("vector is not a regular continued fraction: {0}")]
    NotRegular(String),

    #[error("flype exponent f_{stage} = {exponent} exceeds q_{stage} = {max}")]
    FlypeOutOfRange { stage: usize, exponent: u32, max: u32 },

    #[error("flype vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("objects built from different fractions: {left} vs {right}")]
    FractionMismatch { left: String, right: String },

    #[error("operation needs an oriented front")]
    Unoriented,

    #[error("operation needs a closed curve; use strandwise invariants for tangle strands")]
    OpenCurve,

    #[error("unknown strand writhe convention `{0}` (expected `self` or `half-mixed`)")]
    UnknownConvention(String),

    #[error("invalid render options: {0}")]
    InvalidRenderOptions(String),

    #[error("malformed front: {0}")]
    Malformed(String),

    #[error("unknot certificate failed: {0}")]
    CertificateFailed(String),
}

impl Error {
    /// True for failures that indicate a construction bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Malformed(_) | Error::CertificateFailed(_) | Error::Overflow)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
