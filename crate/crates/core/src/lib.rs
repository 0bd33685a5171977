//! Exact arithmetic for the generalized divisor functions `δₙ` and abundancy
//! indices `Iₙ` in the nine imaginary quadratic rings of integers with unique
//! factorization, together with solitary-element certificates and a bounded
//! exhaustive search for `n`-powerful friends.
//!
//! Everything is generic over the integer scalar ([`Scalar`]); the aliases
//! below fix it to arbitrary precision ([`BigInt`]) or to `i64` for callers
//! who know their values stay small.

pub mod abundancy;
pub mod error;
pub mod factor;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod search;
pub mod solitary;
pub mod surd;

pub use num_bigint::BigInt;

pub use abundancy::AbundancyIndex;
pub use error::{Error, Result};
pub use factor::{Factorization, PrimeClassification};
pub use ring::{RingElement, RingId, Unit};
pub use scalar::Scalar;
pub use search::{FriendGroup, Member, ProbeReport, SearchReport};
pub use solitary::{Reason, SolitaryCertificate, Verdict};
pub use surd::SurdValue;

/// Ring element with arbitrary-precision coordinates.
pub type Element = RingElement<BigInt>;
/// Ring element with machine-word coordinates; overflow is the caller's problem.
pub type SmallElement = RingElement<i64>;
/// Exact surd value with arbitrary-precision coefficients.
pub type Surd = SurdValue<BigInt>;
/// Exact surd value with machine-word coefficients.
pub type SmallSurd = SurdValue<i64>;
/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::Ratio<BigInt>;
/// Reduced fraction generic over the scalar.
pub type Ratio<T> = num_rational::Ratio<T>;
