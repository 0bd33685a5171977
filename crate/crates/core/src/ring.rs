//! Arithmetic in the rings of integers `O = Z[ω]` of `Q(√d)` for the nine
//! negative `d` with unique factorization.
//!
//! Elements are stored in integral-basis coordinates `a + b·ω`, where
//! `ω = √d` for `d ≡ 2, 3 (mod 4)` and `ω = (1 + √d)/2` for `d ≡ 1 (mod 4)`.
//! Every coordinate pair is a valid element, so equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{isqrt, Scalar};

/// One of the nine `d < 0` for which `O_Q(√d)` is a UFD.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(i64);

impl RingId {
    pub const ALL: [RingId; 9] = [
        RingId(-1),
        RingId(-2),
        RingId(-3),
        RingId(-7),
        RingId(-11),
        RingId(-19),
        RingId(-43),
        RingId(-67),
        RingId(-163),
    ];
    pub const GAUSSIAN: RingId = RingId(-1);
    pub const EISENSTEIN: RingId = RingId(-3);

    pub fn new(d: i64) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|r| r.0 == d)
            .ok_or(Error::InvalidRing(d))
    }

    #[inline]
    pub fn d(self) -> i64 {
        self.0
    }

    /// `true` when `ω = (1 + √d)/2`.
    #[inline]
    pub fn is_one_mod_four(self) -> bool {
        self.0.rem_euclid(4) == 1
    }

    /// Field discriminant: `d` when `d ≡ 1 (mod 4)`, else `4d`.
    pub fn discriminant(self) -> i64 {
        if self.is_one_mod_four() {
            self.0
        } else {
            4 * self.0
        }
    }

    /// The constant `c` in `ω² = c` (`d ≡ 2, 3`) or `ω² = ω + c` (`d ≡ 1`).
    fn omega_constant(self) -> i64 {
        if self.is_one_mod_four() {
            (self.0 - 1) / 4
        } else {
            self.0
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `a + b·ω` in the ring `ring`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement<T> {
    ring: RingId,
    a: T,
    b: T,
}

impl<T: Scalar> RingElement<T> {
    pub fn new(ring: RingId, a: T, b: T) -> Self {
        Self { ring, a, b }
    }

    pub fn from_i64(ring: RingId, a: i64, b: i64) -> Self {
        Self::new(ring, T::from_i64_exact(a), T::from_i64_exact(b))
    }

    /// The rational integer `n` viewed as a ring element.
    pub fn from_integer(ring: RingId, n: T) -> Self {
        Self::new(ring, n, T::zero())
    }

    pub fn zero(ring: RingId) -> Self {
        Self::new(ring, T::zero(), T::zero())
    }

    pub fn one(ring: RingId) -> Self {
        Self::new(ring, T::one(), T::zero())
    }

    /// Parses `"a,b"` integral-basis coordinates.
    pub fn parse(ring: RingId, s: &str) -> Result<Self> {
        let (a, b) = s.split_once(',').ok_or_else(|| Error::Parse {
            line: 0,
            message: format!("expected \"a,b\", got {s:?}"),
        })?;
        Ok(Self::new(ring, T::parse_decimal(a)?, T::parse_decimal(b)?))
    }

    #[inline]
    pub fn ring(&self) -> RingId {
        self.ring
    }

    #[inline]
    pub fn a(&self) -> &T {
        &self.a
    }

    #[inline]
    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring.d(), other.ring.d()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(
            self.ring,
            self.a.clone() + other.a.clone(),
            self.b.clone() + other.b.clone(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self::new(
            self.ring,
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let c = T::from_i64_exact(self.ring.omega_constant());
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        let bb = b1.clone() * b2.clone();
        let cross = a1.clone() * b2.clone() + a2.clone() * b1.clone();
        let a = a1.clone() * a2.clone() + c * bb.clone();
        let b = if self.ring.is_one_mod_four() {
            cross + bb
        } else {
            cross
        };
        Ok(Self::new(self.ring, a, b))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugate; `conj(ω) = 1 − ω` when `d ≡ 1 (mod 4)`.
    pub fn conjugate(&self) -> Self {
        if self.ring.is_one_mod_four() {
            Self::new(self.ring, self.a.clone() + self.b.clone(), -self.b.clone())
        } else {
            Self::new(self.ring, self.a.clone(), -self.b.clone())
        }
    }

    /// `N(z) = z·z̄`, always a nonnegative rational integer.
    pub fn norm(&self) -> T {
        let d = T::from_i64_exact(self.ring.d());
        let (a, b) = (&self.a, &self.b);
        if self.ring.is_one_mod_four() {
            // a² + ab + b²(1 − d)/4
            let c = (T::one() - d) / T::from_i64_exact(4);
            a.clone() * a.clone() + a.clone() * b.clone() + c * b.clone() * b.clone()
        } else {
            a.clone() * a.clone() - d * b.clone() * b.clone()
        }
    }

    /// Membership in the half-open sector `A(d)`.
    ///
    /// `d = −1`: `0 ≤ arg < π/2`; `d = −3`: `0 ≤ arg < π/3`; otherwise
    /// `0 ≤ arg < π`. With `Im z ∝ b` and `Re z ∝ 2a + b` (or `a`), all three
    /// reduce to sign tests on the coordinates.
    pub fn is_in_sector(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (a, b) = (&self.a, &self.b);
        Ok(match self.ring.d() {
            // arg < π/2 and arg < π/3 (√3(a + b/2) > b√3/2) both collapse to a > 0.
            -1 | -3 => a.is_positive() && !b.is_negative(),
            _ => b.is_positive() || (b.is_zero() && a.is_positive()),
        })
    }

    /// The unique associate `u·z` lying in `A(d)`.
    pub fn canonical_associate(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        for u in units_of::<T>(self.ring) {
            let candidate = u.value() * self;
            if candidate.is_in_sector()? {
                return Ok(candidate);
            }
        }
        unreachable!("every nonzero element has an associate in A(d)")
    }

    pub fn is_associated(&self, other: &Self) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.canonical_associate()? == other.canonical_associate()?)
    }

    /// `Some(q)` with `q·divisor = self` when the division is exact.
    ///
    /// Computes `self·conj(divisor) / N(divisor)` coordinatewise; the check is
    /// a multiply-and-compare, so it holds in the non-Euclidean rings too.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if self.ring != divisor.ring || divisor.is_zero() {
            return None;
        }
        let n = divisor.norm();
        let num = self * &divisor.conjugate();
        let (qa, ra) = num.a.div_rem(&n);
        let (qb, rb) = num.b.div_rem(&n);
        if !ra.is_zero() || !rb.is_zero() {
            return None;
        }
        let q = Self::new(self.ring, qa, qb);
        debug_assert!(&q * divisor == *self);
        Some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    /// Sort key `(norm, a, b)` used for every ordered listing in the crate.
    pub fn sort_key(&self) -> (T, T, T) {
        (self.norm(), self.a.clone(), self.b.clone())
    }
}

impl<T: Scalar> fmt::Display for RingElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}·ω[{}]", self.a, self.b.abs(), self.ring)
        } else {
            write!(f, "{} + {}·ω[{}]", self.a, self.b, self.ring)
        }
    }
}

impl<'a, T: Scalar> Mul<&'a RingElement<T>> for &'a RingElement<T> {
    type Output = RingElement<T>;

    /// Panics on ring mismatch; use [`RingElement::try_mul`] to get an error.
    fn mul(self, rhs: &'a RingElement<T>) -> RingElement<T> {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl<T: Scalar> Mul for RingElement<T> {
    type Output = RingElement<T>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> Add for RingElement<T> {
    type Output = RingElement<T>;

    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("ring mismatch in addition")
    }
}

impl<T: Scalar> Sub for RingElement<T> {
    type Output = RingElement<T>;

    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("ring mismatch in subtraction")
    }
}

impl<T: Scalar> Neg for RingElement<T> {
    type Output = RingElement<T>;

    fn neg(self) -> Self {
        Self::new(self.ring, -self.a, -self.b)
    }
}

/// A ring element of norm 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unit<T>(RingElement<T>);

impl<T: Scalar> Unit<T> {
    /// `Some` iff `value` has norm 1.
    pub fn new(value: RingElement<T>) -> Option<Self> {
        value.is_unit().then_some(Self(value))
    }

    pub fn one(ring: RingId) -> Self {
        Self(RingElement::one(ring))
    }

    pub fn value(&self) -> &RingElement<T> {
        &self.0
    }

    pub fn into_inner(self) -> RingElement<T> {
        self.0
    }
}

/// All units of the ring: `{±1, ±i}`, `{±1, ±ω, ±(1 − ω)}`, or `{±1}`.
pub fn units_of<T: Scalar>(ring: RingId) -> Vec<Unit<T>> {
    let pairs: &[(i64, i64)] = match ring.d() {
        -1 => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
        -3 => &[(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)],
        _ => &[(1, 0), (-1, 0)],
    };
    pairs
        .iter()
        .map(|&(a, b)| Unit(RingElement::from_i64(ring, a, b)))
        .collect()
}

/// Every lattice point `z` with `1 ≤ N(z) ≤ bound`, in no particular order.
///
/// Bounds come from `4N = (2a + b)² + |d|b²` (or `N = a² + |d|b²`), so the
/// scan visits exactly the points of the ellipse.
pub fn lattice_points<T: Scalar>(ring: RingId, bound: &T) -> Vec<RingElement<T>> {
    let mut out = Vec::new();
    if !bound.is_positive() {
        return out;
    }
    let abs_d = T::from_i64_exact(-ring.d());
    let two = T::from_i64_exact(2);
    if ring.is_one_mod_four() {
        let four_bound = T::from_i64_exact(4) * bound.clone();
        let b_max = isqrt(&(four_bound.clone() / abs_d.clone()));
        let mut b = -b_max.clone();
        while b <= b_max {
            let rest = four_bound.clone() - abs_d.clone() * b.clone() * b.clone();
            let s = isqrt(&rest);
            // −s ≤ 2a + b ≤ s
            let lo = (-s.clone() - b.clone()).div_ceil(&two);
            let hi = (s - b.clone()).div_floor(&two);
            let mut a = lo;
            while a <= hi {
                let z = RingElement::new(ring, a.clone(), b.clone());
                if !z.is_zero() {
                    out.push(z);
                }
                a = a + T::one();
            }
            b = b + T::one();
        }
    } else {
        let b_max = isqrt(&(bound.clone() / abs_d.clone()));
        let mut b = -b_max.clone();
        while b <= b_max {
            let s = isqrt(&(bound.clone() - abs_d.clone() * b.clone() * b.clone()));
            let mut a = -s.clone();
            while a <= s {
                let z = RingElement::new(ring, a.clone(), b.clone());
                if !z.is_zero() {
                    out.push(z);
                }
                a = a + T::one();
            }
            b = b + T::one();
        }
    }
    out
}
