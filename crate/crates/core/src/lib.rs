//! Exact-arithmetic library for filtered binomial sums and Lucas sequences.
//!
//! The central object is the bracket sum `[n r]_m(a) = sum_{k = r (mod m)} C(n,k) a^k`,
//! which this crate evaluates by three independent routes: direct enumeration,
//! the Mobius closed form for the associated integer sequences `W_n(r,m)`, and
//! the order-phi(m) linear recurrence with characteristic polynomial `A_m(x)`.
//! On top of that sit general Lucas-sequence kernels (exact, mod p, mod p^2)
//! and a registry of congruence and divisibility identities that a sweep
//! driver verifies over ranges of primes and parameters.
//!
//! No operation ever touches floating point: everything is exact integer,
//! rational, or modular arithmetic.

// `n % d == 0` and `(p + 1) / 2` are divisibility tests and half-indices,
// not candidates for is_multiple_of / div_ceil.
#![allow(clippy::manual_is_multiple_of, clippy::manual_div_ceil)]

pub mod error;
pub mod lucas;
pub mod modp;
pub mod numtheory;
pub mod poly;
pub mod sums;
pub mod verifier;

pub use error::{Error, Result};
pub use lucas::{LucasPair, LucasPairMod, LucasParams};
pub use poly::IntPolynomial;
pub use sums::{BracketQuery, StepKind, WSeqContext};
pub use verifier::{Identity, ModulusKind, ParamsKind, SweepRange, VerificationReport};
