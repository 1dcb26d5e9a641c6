use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("series has nonzero constant term")]
    NonzeroConstantTerm,

    #[error("malformed mirror map: {0}")]
    MalformedMirrorMap(String),

    /// A denominator vanished at an evaluation point. Usually means the
    /// chosen weights are not generic and must be reseeded.
    #[error("pole at {at}")]
    Pole { at: Rational },

    #[error("dimension mismatch: P^{left} vs P^{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("class is not invertible: {0}")]
    NotInvertible(String),

    #[error("weight collision: {0}")]
    WeightCollision(String),

    #[error("mirror theorem hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("unsupported entry: {0}")]
    Unsupported(String),

    #[error("unexpected series shape: {0}")]
    ShapeMismatch(String),

    #[error("nonequivariant limit is irregular: {0}")]
    Irregular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
