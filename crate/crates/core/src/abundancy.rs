//! Divisor sums `δₙ(z) = Σ_{x | z, x ∈ A(d)} |x|ⁿ` and abundancy indices
//! `Iₙ(z) = δₙ(z)/|z|ⁿ`, all as exact surd values.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::{divisors_in_sector, factor, Factorization};
use crate::ring::{lattice_points, RingElement};
use crate::scalar::Scalar;
use crate::surd::SurdValue;

/// An exact value of `Iₙ`; always `≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbundancyIndex<T: Scalar>(SurdValue<T>);

impl<T: Scalar> AbundancyIndex<T> {
    pub fn value(&self) -> &SurdValue<T> {
        &self.0
    }

    pub fn into_inner(self) -> SurdValue<T> {
        self.0
    }
}

impl<T: Scalar> fmt::Display for AbundancyIndex<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_exponent(n: i64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidExponent(n))
    } else {
        Ok(())
    }
}

/// `|z|ⁿ` as a monomial surd, any sign of `n`.
pub fn abs_pow<T: Scalar>(z: &RingElement<T>, n: i64) -> Result<SurdValue<T>> {
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    SurdValue::sqrt_of_integer(&z.norm())?.monomial_pow(n)
}

/// `Σ_{j=0}^{α} N(π)^{jn/2}`; negative `n` gives the reciprocal powers.
pub fn delta_prime_power<T: Scalar>(
    prime: &RingElement<T>,
    alpha: u32,
    n: i64,
) -> Result<SurdValue<T>> {
    check_exponent(n)?;
    let step = abs_pow(prime, n)?;
    let mut term = SurdValue::one();
    let mut sum = SurdValue::one();
    for _ in 0..alpha {
        term = &term * &step;
        sum = &sum + &term;
    }
    Ok(sum)
}

/// `δₙ` from an existing factorization (multiplicativity over prime powers).
pub fn delta_from_factorization<T: Scalar>(f: &Factorization<T>, n: i64) -> Result<SurdValue<T>> {
    check_exponent(n)?;
    f.factors()
        .iter()
        .try_fold(SurdValue::one(), |acc, (p, e)| {
            Ok(&acc * &delta_prime_power(p, *e, n)?)
        })
}

pub fn delta_n<T: Scalar>(z: &RingElement<T>, n: i64) -> Result<SurdValue<T>> {
    check_exponent(n)?;
    delta_from_factorization(&factor(z)?, n)
}

/// `Iₙ` from an existing factorization of `z`.
pub fn index_from_factorization<T: Scalar>(
    z: &RingElement<T>,
    f: &Factorization<T>,
    n: i64,
) -> Result<AbundancyIndex<T>> {
    if n < 1 {
        return Err(Error::InvalidExponent(n));
    }
    let delta = delta_from_factorization(f, n)?;
    let scale = abs_pow(z, n)?.invert_monomial()?;
    Ok(AbundancyIndex(&delta * &scale))
}

pub fn index_n<T: Scalar>(z: &RingElement<T>, n: i64) -> Result<AbundancyIndex<T>> {
    if n < 1 {
        return Err(Error::InvalidExponent(n));
    }
    index_from_factorization(z, &factor(z)?, n)
}

/// Direct summation oracle for [`delta_n`].
///
/// Walks every lattice point in `A(d)` with norm at most `N(z)` and keeps the
/// exact divisors; no factorization is involved.
pub fn delta_n_bruteforce<T: Scalar>(z: &RingElement<T>, n: i64) -> Result<SurdValue<T>> {
    check_exponent(n)?;
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    let norm = z.norm();
    let mut sum = SurdValue::zero();
    for x in lattice_points(z.ring(), &norm) {
        if !x.is_in_sector()? || !(norm.clone() % x.norm()).is_zero() || !x.divides(z) {
            continue;
        }
        sum = &sum + &abs_pow(&x, n)?;
    }
    Ok(sum)
}

/// `F(z) = Σ_{x, y ∈ A(d), xy ∼ z} f(x)·g(y)`.
///
/// Each divisor `x ∈ A(d)` fixes `y` as the canonical associate of `z/x`, so
/// the ordered pairs are enumerated exactly once.
pub fn divisor_pair_convolution<T, F, G>(f: F, g: G, z: &RingElement<T>) -> Result<SurdValue<T>>
where
    T: Scalar,
    F: Fn(&RingElement<T>) -> SurdValue<T>,
    G: Fn(&RingElement<T>) -> SurdValue<T>,
{
    let mut sum = SurdValue::zero();
    for x in divisors_in_sector(z)? {
        let y = z
            .div_exact(&x)
            .expect("enumerated divisor divides z")
            .canonical_associate()?;
        sum = &sum + &(&f(&x) * &g(&y));
    }
    Ok(sum)
}

/// `true` iff `Iₙ(z) = 1` exactly.
pub fn is_trivial_index<T: Scalar>(index: &AbundancyIndex<T>) -> bool {
    index.value().to_rational().is_some_and(|r| r.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{units_of, RingId};

    type E = RingElement<i64>;
    type S = SurdValue<i64>;

    fn el(d: i64, a: i64, b: i64) -> E {
        E::from_i64(RingId::new(d).unwrap(), a, b)
    }

    fn s(text: &str) -> S {
        text.parse().unwrap()
    }

    #[test]
    fn prime_power_examples() {
        assert_eq!(
            delta_prime_power(&el(-1, 1, 1), 1, 2).unwrap(),
            S::from_integer(3)
        );
        assert_eq!(delta_prime_power(&el(-1, 2, -1), 0, 5).unwrap(), S::one());
        assert_eq!(
            delta_prime_power(&el(-1, 2, -1), 1, 1).unwrap(),
            s("1 + sqrt(5)")
        );
        assert_eq!(
            delta_prime_power(&el(-1, 2, -1), 2, -1).unwrap(),
            s("6/5 + 1/5*sqrt(5)")
        );
        assert_eq!(
            delta_prime_power(&el(-1, 2, -1), 2, 0),
            Err(Error::InvalidExponent(0))
        );
    }

    #[test]
    fn delta_examples() {
        let three_g = el(-1, 3, 0);
        let three_2 = el(-2, 3, 0);
        assert_eq!(delta_n(&three_g, 2).unwrap(), S::from_integer(10));
        assert_eq!(delta_n(&three_2, 2).unwrap(), S::from_integer(16));
        assert_eq!(delta_n(&el(-1, 9, 3), 2).unwrap(), S::from_integer(180));
        assert!(delta_n(&el(-1, 0, 0), 2).is_err());
        assert!(delta_n(&three_g, 0).is_err());
    }

    #[test]
    fn index_examples() {
        assert_eq!(
            index_n(&el(-1, 9, 3), 2).unwrap().value(),
            &S::from_integer(2)
        );
        for d in RingId::ALL {
            for u in units_of::<i64>(d) {
                for n in 1..4 {
                    assert!(is_trivial_index(&index_n(u.value(), n).unwrap()));
                }
            }
        }
        assert_eq!(
            index_n(&el(-1, 2, -1), 1).unwrap().value(),
            &s("1 + 1/5*sqrt(5)")
        );
        assert_eq!(index_n(&el(-1, 2, -1), 0), Err(Error::InvalidExponent(0)));
        assert_eq!(index_n(&el(-1, 2, -1), -1), Err(Error::InvalidExponent(-1)));
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(
            delta_n_bruteforce(&el(-1, 9, 3), 2).unwrap(),
            S::from_integer(180)
        );
        assert_eq!(delta_n_bruteforce(&el(-3, 0, 1), 3).unwrap(), S::one());
        let z = el(-7, 5, 3);
        for n in [-3, -2, -1, 1, 2, 3] {
            assert_eq!(delta_n_bruteforce(&z, n).unwrap(), delta_n(&z, n).unwrap());
        }
    }

    #[test]
    fn convolution_examples() {
        let z = el(-1, 9, 3);
        let abs2 = |x: &E| abs_pow(x, 2).unwrap();
        let one = |_: &E| S::one();
        assert_eq!(
            divisor_pair_convolution(abs2, one, &z).unwrap(),
            S::from_integer(180)
        );
        assert_eq!(
            divisor_pair_convolution(one, one, &el(-1, 5, 0)).unwrap(),
            S::from_integer(4)
        );
        assert_eq!(
            divisor_pair_convolution(abs2, abs2, &el(-1, 0, 1)).unwrap(),
            S::one()
        );
    }
}
