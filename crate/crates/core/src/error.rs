use thiserror::Error;

use crate::family::Subfamily;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("invalid shape (b={b}, c={c}): {constraint}")]
    InvalidShape {
        b: i64,
        c: i64,
        constraint: &'static str,
    },
    #[error("input of degree {degree} exceeds the maximum degree {max}")]
    InputTooLong { degree: usize, max: usize },
    #[error("reducer for {expected} called with a {actual} shape")]
    WrongSubfamily {
        expected: &'static str,
        actual: Subfamily,
    },
    #[error("degree {m} modulus is reducible, so GF(2)[x]/(f) is not a field")]
    ReducibleModulus { m: usize },
    #[error("elements belong to different field contexts")]
    ContextMismatch,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("malformed hex polynomial {0:?}")]
    ParseHex(String),
    #[error("malformed shape {0:?}, expected \"b,c\"")]
    ParseShape(String),
}
