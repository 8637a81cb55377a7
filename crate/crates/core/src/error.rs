use thiserror::Error;

use crate::scalars::Rational;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DomainError,
    #[error("rational function has a pole at a = {0}")]
    PoleError(Rational),
    #[error("scalars from different fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("polynomials live in different rings: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("negative exponent on non-Laurent variable `{0}`")]
    LaurentViolation(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("mode error: {0}")]
    ModeError(String),
    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element does not lie in the subring {0}")]
    NotInSubring(String),
    #[error("twist is not an automorphism: {0}")]
    InvalidTwist(String),
    #[error("series denominator vanishes at t = 0")]
    SeriesError,
    #[error("not a syzygy: {0}")]
    InvalidSyzygy(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("zero denominator in rational expression")]
    ZeroDenominator,
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error("unknown family `{0}`")]
    UnknownLabel(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
