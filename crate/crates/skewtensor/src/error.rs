use thiserror::Error;

use crate::field::FieldTag;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldTag, FieldTag),
    #[error("{value} has no reduction mod {prime}")]
    BadReduction { prime: u64, value: String },
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("tensor is not generic: {0}")]
    NotGeneric(String),
    #[error("fiber is positive dimensional: {0}")]
    AmbiguousFiber(String),
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),
    #[error("model anomaly: {0}")]
    ModelAnomaly(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
