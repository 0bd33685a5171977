//! Prime splitting, norm equations, and factorization into canonical primes.

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingId, Unit};
use crate::scalar::{exact_sqrt, isqrt, Scalar};

/// Default ceiling on `N(z)` for trial-division factorization.
pub const DEFAULT_CEILING: u64 = 100_000_000;

/// How an integer prime `p` decomposes in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeClassification<T> {
    /// `p` stays prime.
    Inert,
    /// `p ∼ π²` with `π ∼ π̄`.
    Ramified(RingElement<T>),
    /// `p = π·π̄` up to a unit, `π ≁ π̄`; both witnesses are canonical.
    Split(RingElement<T>, RingElement<T>),
}

pub fn is_prime<T: Scalar>(n: &T) -> bool {
    let two = T::from_i64_exact(2);
    if *n < two {
        return false;
    }
    let mut p = two;
    while p.clone() * p.clone() <= *n {
        if (n.clone() % p.clone()).is_zero() {
            return false;
        }
        p = p + T::one();
    }
    true
}

/// Trial-division factorization of `n ≥ 1` into `(prime, exponent)` pairs,
/// ascending by prime.
pub fn factor_integer<T: Scalar>(n: &T) -> Vec<(T, u32)> {
    let mut out = Vec::new();
    let mut rest = n.abs();
    let mut p = T::from_i64_exact(2);
    while p.clone() * p.clone() <= rest {
        let mut e = 0;
        while (rest.clone() % p.clone()).is_zero() {
            rest = rest / p.clone();
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p = p + T::one();
    }
    if rest > T::one() {
        out.push((rest, 1));
    }
    out
}

fn mod_pow<T: Scalar>(base: &T, exp: &T, m: &T) -> T {
    let two = T::from_i64_exact(2);
    let mut result = T::one() % m.clone();
    let mut b = base.mod_floor(m);
    let mut e = exp.clone();
    while e.is_positive() {
        if e.is_odd() {
            result = (result * b.clone()).mod_floor(m);
        }
        b = (b.clone() * b).mod_floor(m);
        e = e / two.clone();
    }
    result
}

fn is_nonzero_qr_mod<T: Scalar>(a: &T, p: &T) -> bool {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return false;
    }
    let half = (p.clone() - T::one()) / T::from_i64_exact(2);
    mod_pow(&a, &half, p).is_one()
}

/// A canonical `π ∈ A(d)` with `N(π) = p`, or `None` when `p` is inert.
///
/// Scans `|b| ≤ √(4p/|disc|)` and solves the quadratic in `a`; among all
/// solutions in `A(d)` the minimum under `(b, a)` order is returned.
pub fn solve_norm_equation<T: Scalar>(p: &T, ring: RingId) -> Result<Option<RingElement<T>>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let abs_d = T::from_i64_exact(-ring.d());
    let two = T::from_i64_exact(2);
    let mut best: Option<RingElement<T>> = None;
    let mut consider = |z: RingElement<T>| {
        if z.is_in_sector().unwrap_or(false) && z.norm() == *p {
            let key = (z.b().clone(), z.a().clone());
            if best
                .as_ref()
                .is_none_or(|w| key < (w.b().clone(), w.a().clone()))
            {
                best = Some(z);
            }
        }
    };
    if ring.is_one_mod_four() {
        // 4p = (2a + b)² + |d|b²
        let four_p = T::from_i64_exact(4) * p.clone();
        let b_max = isqrt(&(four_p.clone() / abs_d.clone()));
        let mut b = T::zero();
        while b <= b_max {
            if let Some(s) = exact_sqrt(&(four_p.clone() - abs_d.clone() * b.clone() * b.clone())) {
                for t in [s.clone(), -s] {
                    let twice_a = t - b.clone();
                    if twice_a.is_even() {
                        consider(RingElement::new(ring, twice_a / two.clone(), b.clone()));
                    }
                }
            }
            b = b + T::one();
        }
    } else {
        // p = a² + |d|b²
        let b_max = isqrt(&(p.clone() / abs_d.clone()));
        let mut b = T::zero();
        while b <= b_max {
            if let Some(s) = exact_sqrt(&(p.clone() - abs_d.clone() * b.clone() * b.clone())) {
                consider(RingElement::new(ring, s.clone(), b.clone()));
                consider(RingElement::new(ring, -s, b.clone()));
            }
            b = b + T::one();
        }
    }
    Ok(best)
}

/// Inert / ramified / split verdict for the integer prime `p`.
pub fn classify_integer_prime<T: Scalar>(p: &T, ring: RingId) -> Result<PrimeClassification<T>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let disc = T::from_i64_exact(ring.discriminant());
    let d = T::from_i64_exact(ring.d());
    let ramified = (disc % p.clone()).is_zero();
    let split = !ramified
        && if *p == T::from_i64_exact(2) {
            // only reachable for d ≡ 1 (mod 4)
            d.mod_floor(&T::from_i64_exact(8)).is_one()
        } else {
            is_nonzero_qr_mod(&d, p)
        };
    if !ramified && !split {
        return Ok(PrimeClassification::Inert);
    }
    let pi = solve_norm_equation(p, ring)?
        .expect("ramified and split primes are norms in a class-number-one ring");
    if ramified {
        Ok(PrimeClassification::Ramified(pi))
    } else {
        let pi_bar = pi.conjugate().canonical_associate()?;
        Ok(PrimeClassification::Split(pi, pi_bar))
    }
}

/// `unit · Π primeᵉ`, primes canonical, pairwise non-associated, and
/// sorted by `(norm, a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<T: Scalar> {
    unit: Unit<T>,
    factors: Vec<(RingElement<T>, u32)>,
}

impl<T: Scalar> Factorization<T> {
    pub fn unit(&self) -> &Unit<T> {
        &self.unit
    }

    pub fn factors(&self) -> &[(RingElement<T>, u32)] {
        &self.factors
    }

    pub fn ring(&self) -> RingId {
        self.unit.value().ring()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies everything back out.
    pub fn expand(&self) -> RingElement<T> {
        self.factors
            .iter()
            .fold(self.unit.value().clone(), |acc, (p, e)| &acc * &p.pow(*e))
    }

    /// Exponent of the canonical prime `prime`, zero if absent.
    pub fn exponent_of(&self, prime: &RingElement<T>) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == prime)
            .map_or(0, |(_, e)| *e)
    }
}

/// Factors `z` with the default norm ceiling.
pub fn factor<T: Scalar>(z: &RingElement<T>) -> Result<Factorization<T>> {
    factor_with_ceiling(z, &T::from_u64_exact(DEFAULT_CEILING))
}

/// Factors `z`; norms above `ceiling` are refused rather than attempted.
pub fn factor_with_ceiling<T: Scalar>(z: &RingElement<T>, ceiling: &T) -> Result<Factorization<T>> {
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ring = z.ring();
    let norm = z.norm();
    if norm > *ceiling {
        return Err(Error::FactorizationOverflow {
            norm: norm.to_string(),
            ceiling: ceiling.to_string(),
        });
    }
    let mut rest = z.clone();
    let mut factors = Vec::new();
    let strip = |rest: &mut RingElement<T>, prime: &RingElement<T>, limit: Option<u32>| {
        let mut e = 0;
        while limit.is_none_or(|l| e < l) {
            match rest.div_exact(prime) {
                Some(q) => {
                    *rest = q;
                    e += 1;
                }
                None => break,
            }
        }
        e
    };
    for (p, e) in factor_integer(&norm) {
        match classify_integer_prime(&p, ring)? {
            PrimeClassification::Inert => {
                let q = RingElement::from_integer(ring, p);
                let k = strip(&mut rest, &q, Some(e / 2));
                debug_assert_eq!(2 * k, e);
                factors.push((q, k));
            }
            PrimeClassification::Ramified(pi) => {
                let k = strip(&mut rest, &pi, Some(e));
                debug_assert_eq!(k, e);
                factors.push((pi, k));
            }
            PrimeClassification::Split(pi, pi_bar) => {
                let k1 = strip(&mut rest, &pi, Some(e));
                let k2 = strip(&mut rest, &pi_bar, Some(e - k1));
                debug_assert_eq!(k1 + k2, e);
                if k1 > 0 {
                    factors.push((pi, k1));
                }
                if k2 > 0 {
                    factors.push((pi_bar, k2));
                }
            }
        }
    }
    let unit = Unit::new(rest).expect("cofactor after removing all primes is a unit");
    factors.sort_by_key(|(p, _)| p.sort_key());
    Ok(Factorization { unit, factors })
}

/// One representative in `A(d)` per associate class of divisors of `z`,
/// sorted by `(norm, a, b)`.
pub fn divisors_in_sector<T: Scalar>(z: &RingElement<T>) -> Result<Vec<RingElement<T>>> {
    let f = factor(z)?;
    let mut divisors = vec![RingElement::one(z.ring())];
    for (prime, e) in f.factors() {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = &acc * prime;
                next.push(acc.clone());
            }
        }
        divisors = next;
    }
    let mut out = divisors
        .into_iter()
        .map(|d| d.canonical_associate())
        .collect::<Result<Vec<_>>>()?;
    out.sort_by_key(|d| d.sort_key());
    Ok(out)
}

/// No shared prime up to association. Uses factorizations, not Euclid.
pub fn is_coprime<T: Scalar>(x: &RingElement<T>, y: &RingElement<T>) -> Result<bool> {
    if x.ring() != y.ring() {
        return Err(Error::RingMismatch(x.ring().d(), y.ring().d()));
    }
    let fx = factor(x)?;
    let fy = factor(y)?;
    Ok(!fx
        .factors()
        .iter()
        .any(|(p, _)| fy.factors().iter().any(|(q, _)| p == q)))
}
