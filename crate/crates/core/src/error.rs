use thiserror::Error;

use crate::coeff::Period;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(Period, Period),
    #[error("cannot reduce period {from} to {to}: target must divide source")]
    BadReduction { from: Period, to: Period },
    #[error("division by (1+q) needs an infinite or odd period, got {0}")]
    EvenPeriod(Period),
    #[error("{0} is not divisible by (1+q)")]
    NotDivisible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("structure constants are not associative at (b{0} b{1}) b{2}")]
    NonAssociative(usize, usize, usize),
    #[error("bad unit: {0}")]
    BadUnit(String),
    #[error("quiver: {0}")]
    Quiver(String),
    #[error("operands live over different algebras")]
    AlgebraMismatch,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),
    #[error("endomorphism is not idempotent")]
    NotIdempotent,
    #[error(
        "radical criterion unsupported in characteristic {char} for an algebra of dimension {dim}"
    )]
    UnsupportedCharacteristic { char: u64, dim: usize },
    #[error("algebra is not local")]
    NotLocal,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("precondition violated in {op}: {msg}")]
    Precondition { op: &'static str, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
