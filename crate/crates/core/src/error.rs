use num_bigint::{BigInt, BigUint};
use thiserror::Error;

/// Errors surfaced by the exact-arithmetic and verification APIs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: BigInt, modulus: BigUint },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("fermat quotient undefined: {p} divides the base")]
    FermatQuotientUndefined { p: u64 },

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("denominator {denominator} at k = {k} is not invertible modulo {p}")]
    NonInvertibleDenominator { k: u64, denominator: u64, p: u64 },

    #[error("base {value}/{denominator} is not defined modulo {p}")]
    BaseNotInvertible {
        value: i64,
        denominator: i64,
        p: u64,
    },

    #[error("quotient undefined: {p} does not divide u_{index}")]
    QuotientUndefined { p: u64, index: u64 },

    #[error("{value} is not divisible by {p}")]
    NotDivisible { value: u64, p: u64 },

    #[error("{p} divides B, transform undefined")]
    TransformUndefined { p: u64 },

    #[error("invalid query: {0}")]
    InvalidQuery(&'static str),

    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
