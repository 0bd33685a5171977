//! The integer scalar every structure in this crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Signed exact integer: `i64`, `i128` and [`num_bigint::BigInt`] all qualify.
pub trait Scalar:
    Clone
    + Integer
    + Signed
    + Roots
    + FromPrimitive
    + ToPrimitive
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot hold an i64 value")
    }

    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("scalar type cannot hold a u64 value")
    }

    fn parse_decimal(s: &str) -> Result<Self> {
        Self::from_str_radix(s.trim(), 10).map_err(|_| Error::Parse {
            line: 0,
            message: format!("bad integer {s:?}"),
        })
    }

    fn pow_u32(&self, exp: u32) -> Self {
        num_traits::pow(self.clone(), exp as usize)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Integer
        + Signed
        + Roots
        + FromPrimitive
        + ToPrimitive
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Floor square root of a nonnegative value.
pub(crate) fn isqrt<T: Scalar>(n: &T) -> T {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// `Some(r)` when `n = r²` exactly.
pub(crate) fn exact_sqrt<T: Scalar>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    if r.clone() * r.clone() == *n {
        Some(r)
    } else {
        None
    }
}
