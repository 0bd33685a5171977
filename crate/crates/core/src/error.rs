use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("d = {0} is not one of the nine imaginary quadratic UFD discriminants")]
    InvalidRing(i64),
    #[error("ring mismatch: d = {0} vs d = {1}")]
    RingMismatch(i64, i64),
    #[error("zero element is not allowed here")]
    ZeroElement,
    #[error("{0} is not a positive integer prime")]
    NotPrime(String),
    #[error("{0} is not square-free")]
    NotSquareFree(String),
    #[error("expected a positive integer, got {0}")]
    NotPositive(String),
    #[error("invalid exponent n = {0}")]
    InvalidExponent(i64),
    #[error("only single-term surds can be inverted")]
    NonMonomial,
    #[error("norm {norm} exceeds the factorization ceiling {ceiling}")]
    FactorizationOverflow { norm: String, ceiling: String },
    #[error("target is not of the form π^k1·π̄^k2 with k1, k2 odd and n odd")]
    ShapeMismatch,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
