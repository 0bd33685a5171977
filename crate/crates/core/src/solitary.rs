//! Proof-backed certificates that an element is `n`-powerfully solitary,
//! the friend-shape constraint for `π^k₁·π̄^k₂` with both exponents odd, and
//! a brute-force check of the exponent equation behind it.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::{classify_integer_prime, factor, is_prime, Factorization, PrimeClassification};
use crate::ring::RingElement;
use crate::scalar::{exact_sqrt, Scalar};

/// Which proven result covers the element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reason {
    /// `z` is a unit.
    Unit,
    /// `z ∼ π^k`, `n` even.
    PrimePowerEvenN,
    /// `z ∼ π^k` with `π ∼ π̄` (ramified or inert), `n` odd.
    RamifiedOrInertPrimePowerOddN,
    /// `z ∼ π^k` with `π ≁ π̄`, `n` odd.
    SplitPrimePowerOddN,
    /// `z ∼ π^k₁·π̄^k₂`, `π ≁ π̄`, `n` odd, `k₁` and `k₂` not both odd.
    ConjugatePairNotBothOdd,
    /// `z ∼ p^k` for a split integer prime `p`, `k` even or `1`, `n` odd.
    IntegerPrimeKEvenOrOne,
}

impl Reason {
    pub const ALL: [Reason; 6] = [
        Reason::Unit,
        Reason::PrimePowerEvenN,
        Reason::RamifiedOrInertPrimePowerOddN,
        Reason::SplitPrimePowerOddN,
        Reason::ConjugatePairNotBothOdd,
        Reason::IntegerPrimeKEvenOrOne,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Reason::Unit => "unit",
            Reason::PrimePowerEvenN => "prime_power_even_n",
            Reason::RamifiedOrInertPrimePowerOddN => "ramified_or_inert_prime_power_odd_n",
            Reason::SplitPrimePowerOddN => "split_prime_power_odd_n",
            Reason::ConjugatePairNotBothOdd => "conjugate_pair_not_both_odd",
            Reason::IntegerPrimeKEvenOrOne => "integer_prime_k_even_or_one",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.code() == code)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Certified(Reason),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolitaryCertificate<T: Scalar> {
    verdict: Verdict,
    n: i64,
    factorization: Factorization<T>,
}

impl<T: Scalar> SolitaryCertificate<T> {
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, Verdict::Certified(_))
    }

    pub fn reason(&self) -> Option<Reason> {
        match self.verdict {
            Verdict::Certified(r) => Some(r),
            Verdict::Unknown => None,
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// The factorization the verdict was read from.
    pub fn factorization(&self) -> &Factorization<T> {
        &self.factorization
    }

    /// Replays the cited result's hypotheses against the stored
    /// factorization. Uses the integer-prime classification directly rather
    /// than the structural tests that produced the verdict.
    pub fn hypotheses_hold(&self) -> bool {
        let Verdict::Certified(reason) = self.verdict else {
            return true;
        };
        let n_odd = self.n % 2 != 0;
        let fs = self.factorization.factors();
        let kind = |p: &RingElement<T>| integer_prime_behaviour(p);
        match (reason, fs) {
            (Reason::Unit, []) => true,
            (Reason::PrimePowerEvenN, [_]) => !n_odd,
            (Reason::RamifiedOrInertPrimePowerOddN, [(p, _)]) => {
                n_odd && matches!(kind(p), Some(Behaviour::Ramified | Behaviour::Inert))
            }
            (Reason::SplitPrimePowerOddN, [(p, _)]) => n_odd && kind(p) == Some(Behaviour::Split),
            (Reason::ConjugatePairNotBothOdd, [(p, k1), (q, k2)]) => {
                n_odd
                    && kind(p) == Some(Behaviour::Split)
                    && are_conjugate(p, q)
                    && !(k1 % 2 == 1 && k2 % 2 == 1)
            }
            (Reason::IntegerPrimeKEvenOrOne, [(p, k1), (q, k2)]) => {
                if !(n_odd && kind(p) == Some(Behaviour::Split) && are_conjugate(p, q) && k1 == k2)
                {
                    return false;
                }
                let k = *k1;
                let int_p = RingElement::from_integer(p.ring(), p.norm());
                (k == 1 || k % 2 == 0)
                    && self
                        .factorization
                        .expand()
                        .is_associated(&int_p.pow(k))
                        .unwrap_or(false)
            }
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Behaviour {
    Inert,
    Ramified,
    Split,
}

/// How the integer prime under a canonical prime `π` behaves, via
/// `classify_integer_prime` on `N(π)` or `√N(π)`.
fn integer_prime_behaviour<T: Scalar>(prime: &RingElement<T>) -> Option<Behaviour> {
    let norm = prime.norm();
    if is_prime(&norm) {
        return match classify_integer_prime(&norm, prime.ring()).ok()? {
            PrimeClassification::Ramified(_) => Some(Behaviour::Ramified),
            PrimeClassification::Split(..) => Some(Behaviour::Split),
            PrimeClassification::Inert => None,
        };
    }
    let q = exact_sqrt(&norm)?;
    match classify_integer_prime(&q, prime.ring()).ok()? {
        PrimeClassification::Inert => Some(Behaviour::Inert),
        _ => None,
    }
}

fn are_conjugate<T: Scalar>(p: &RingElement<T>, q: &RingElement<T>) -> bool {
    p.conjugate().is_associated(q).unwrap_or(false) && !p.is_associated(q).unwrap_or(true)
}

/// `π ≁ π̄` for a canonical prime `π`.
fn is_split_prime<T: Scalar>(p: &RingElement<T>) -> bool {
    p.conjugate()
        .canonical_associate()
        .expect("primes are nonzero")
        != *p
}

/// `(π, k₁, k₂)` when the factorization is exactly `π^k₁·π̄^k₂` with `π ≁ π̄`.
fn conjugate_pair<T: Scalar>(f: &Factorization<T>) -> Option<(RingElement<T>, u32, u32)> {
    match f.factors() {
        [(p, k1), (q, k2)]
            if is_split_prime(p) && p.conjugate().canonical_associate().ok()? == *q =>
        {
            Some((p.clone(), *k1, *k2))
        }
        _ => None,
    }
}

/// Reads off which proven result (if any) makes `z` `n`-powerfully solitary.
pub fn certify_solitary<T: Scalar>(z: &RingElement<T>, n: i64) -> Result<SolitaryCertificate<T>> {
    if n < 1 {
        return Err(Error::InvalidExponent(n));
    }
    let f = factor(z)?;
    Ok(certify_from_factorization(f, n))
}

pub fn certify_from_factorization<T: Scalar>(
    f: Factorization<T>,
    n: i64,
) -> SolitaryCertificate<T> {
    let n_odd = n % 2 != 0;
    let verdict = match f.factors() {
        [] => Verdict::Certified(Reason::Unit),
        [_] if !n_odd => Verdict::Certified(Reason::PrimePowerEvenN),
        [(p, _)] if is_split_prime(p) => Verdict::Certified(Reason::SplitPrimePowerOddN),
        [_] => Verdict::Certified(Reason::RamifiedOrInertPrimePowerOddN),
        _ => match conjugate_pair(&f) {
            Some((_, k1, k2)) if n_odd && k1 == k2 && (k1 == 1 || k1 % 2 == 0) => {
                Verdict::Certified(Reason::IntegerPrimeKEvenOrOne)
            }
            Some((_, k1, k2)) if n_odd && !(k1 % 2 == 1 && k2 % 2 == 1) => {
                Verdict::Certified(Reason::ConjugatePairNotBothOdd)
            }
            _ => Verdict::Unknown,
        },
    };
    SolitaryCertificate {
        verdict,
        n,
        factorization: f,
    }
}

/// Shape data for a target `π^k₁·π̄^k₂` with `k₁, k₂` odd and `n` odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendShape<T> {
    pi: RingElement<T>,
    pi_bar: RingElement<T>,
}

impl<T: Scalar> FriendShape<T> {
    /// `None` unless `target` has the required shape and `n` is odd.
    pub fn of_factorization(target: &Factorization<T>, n: i64) -> Option<Self> {
        if n < 1 || n % 2 == 0 {
            return None;
        }
        let (pi, k1, k2) = conjugate_pair(target)?;
        if k1 % 2 == 1 && k2 % 2 == 1 {
            let pi_bar = target.factors()[1].0.clone();
            Some(Self { pi, pi_bar })
        } else {
            None
        }
    }

    pub fn pi(&self) -> &RingElement<T> {
        &self.pi
    }

    pub fn pi_bar(&self) -> &RingElement<T> {
        &self.pi_bar
    }

    pub fn of(target: &RingElement<T>, n: i64) -> Result<Self> {
        Self::of_factorization(&factor(target)?, n).ok_or(Error::ShapeMismatch)
    }

    /// `true` iff the candidate is `π^α₁·π̄^α₂·Π qⱼ^γⱼ` with `α₁, α₂` odd and
    /// every `qⱼ` an inert integer prime. `false` rules the candidate out.
    pub fn admits(&self, candidate: &Factorization<T>) -> bool {
        let mut alpha1 = 0;
        let mut alpha2 = 0;
        for (q, e) in candidate.factors() {
            if *q == self.pi {
                alpha1 = *e;
            } else if *q == self.pi_bar {
                alpha2 = *e;
            } else if integer_prime_behaviour(q) != Some(Behaviour::Inert) {
                return false;
            }
        }
        alpha1 % 2 == 1 && alpha2 % 2 == 1
    }
}

pub fn friend_shape_filter<T: Scalar>(
    target: &RingElement<T>,
    candidate: &RingElement<T>,
    n: i64,
) -> Result<bool> {
    if target.ring() != candidate.ring() {
        return Err(Error::RingMismatch(target.ring().d(), candidate.ring().d()));
    }
    let shape = FriendShape::of(target, n)?;
    Ok(shape.admits(&factor(candidate)?))
}

/// Outcome of the exhaustive check of
/// `(p^m₁ + p^m₂)(p^(β₁+β₂+1) + 1) = (p^β₁ + p^β₂)(p^(m₁+m₂+1) + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma35Report {
    pub p: u64,
    pub max_exp: u32,
    pub checked: u64,
    /// Every `(m₁, m₂, β₁, β₂)` satisfying the equation.
    pub solutions: Vec<[u32; 4]>,
    /// Solutions that are not `(m₁, m₂) = (β₁, β₂)` or `(β₂, β₁)`.
    pub asymmetric_solutions: Vec<[u32; 4]>,
    /// Symmetric quadruples that unexpectedly fail the equation.
    pub failing_symmetric: Vec<[u32; 4]>,
}

impl Lemma35Report {
    pub fn holds(&self) -> bool {
        self.asymmetric_solutions.is_empty() && self.failing_symmetric.is_empty()
    }
}

pub fn exponent_equation_holds(p: u64, [m1, m2, b1, b2]: [u32; 4]) -> bool {
    let p = BigInt::from(p);
    let pw = |e: u32| num_traits::pow(p.clone(), e as usize);
    let lhs = (pw(m1) + pw(m2)) * (pw(b1 + b2 + 1) + BigInt::one());
    let rhs = (pw(b1) + pw(b2)) * (pw(m1 + m2 + 1) + BigInt::one());
    lhs == rhs
}

pub fn verify_lemma_3_5(p: u64, max_exp: u32) -> Result<Lemma35Report> {
    if !is_prime(&(p as i128)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let mut report = Lemma35Report {
        p,
        max_exp,
        checked: 0,
        solutions: Vec::new(),
        asymmetric_solutions: Vec::new(),
        failing_symmetric: Vec::new(),
    };
    let range = 0..=max_exp;
    for m1 in range.clone() {
        for m2 in range.clone() {
            for b1 in range.clone() {
                for b2 in range.clone() {
                    let q = [m1, m2, b1, b2];
                    report.checked += 1;
                    let symmetric = (m1 == b1 && m2 == b2) || (m1 == b2 && m2 == b1);
                    let solves = exponent_equation_holds(p, q);
                    if solves {
                        report.solutions.push(q);
                    }
                    match (solves, symmetric) {
                        (true, false) => report.asymmetric_solutions.push(q),
                        (false, true) => report.failing_symmetric.push(q),
                        _ => {}
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingId;

    type E = RingElement<i64>;

    fn el(d: i64, a: i64, b: i64) -> E {
        E::from_i64(RingId::new(d).unwrap(), a, b)
    }

    fn reason(z: &E, n: i64) -> Option<Reason> {
        let c = certify_solitary(z, n).unwrap();
        assert!(c.hypotheses_hold(), "{z} n={n}");
        c.reason()
    }

    #[test]
    fn certify_examples() {
        let pi = el(-1, 2, 1);
        let pi_bar = el(-1, 2, -1);
        for n in 1..5 {
            assert!(reason(&pi, n).is_some());
        }
        assert_eq!(reason(&pi, 1), Some(Reason::SplitPrimePowerOddN));
        assert_eq!(reason(&pi, 2), Some(Reason::PrimePowerEvenN));
        assert_eq!(
            reason(&el(-1, 5, 0), 1),
            Some(Reason::IntegerPrimeKEvenOrOne)
        );
        let z = &pi.pow(3) * &pi_bar;
        assert_eq!(reason(&z, 1), None);
        assert_eq!(
            reason(&(&pi.pow(2) * &pi_bar), 1),
            Some(Reason::ConjugatePairNotBothOdd)
        );
        assert_eq!(
            reason(&el(-1, 25, 0), 3),
            Some(Reason::IntegerPrimeKEvenOrOne)
        );
        assert_eq!(reason(&el(-1, 125, 0), 1), None);
        assert_eq!(reason(&el(-1, 0, 1), 1), Some(Reason::Unit));
        assert_eq!(
            reason(&el(-1, 9, 0), 1),
            Some(Reason::RamifiedOrInertPrimePowerOddN)
        );
        assert_eq!(
            reason(&el(-1, 0, 4), 3),
            Some(Reason::RamifiedOrInertPrimePowerOddN)
        );
        // n even only certifies prime powers
        assert_eq!(reason(&el(-1, 5, 0), 2), None);
        assert_eq!(reason(&el(-1, 15, 0), 1), None);
        assert!(certify_solitary(&el(-1, 0, 0), 1).is_err());
        assert!(certify_solitary(&el(-1, 1, 0), 0).is_err());
    }

    #[test]
    fn reason_codes_roundtrip() {
        for r in Reason::ALL {
            assert_eq!(Reason::from_code(r.code()), Some(r));
        }
        assert_eq!(Reason::from_code("nope"), None);
    }

    #[test]
    fn tampered_certificate_fails_replay() {
        let mut c = certify_solitary(&el(-1, 15, 0), 1).unwrap();
        c.verdict = Verdict::Certified(Reason::SplitPrimePowerOddN);
        assert!(!c.hypotheses_hold());
        let mut c = certify_solitary(&el(-1, 2, 1), 1).unwrap();
        c.verdict = Verdict::Certified(Reason::PrimePowerEvenN);
        assert!(!c.hypotheses_hold());
    }

    #[test]
    fn shape_filter_examples() {
        let five = el(-1, 5, 0);
        let pi = el(-1, 2, 1);
        let pi_bar = el(-1, 2, -1);
        assert!(friend_shape_filter(&five, &el(-1, 15, 0), 1).unwrap());
        assert!(!friend_shape_filter(&five, &(&pi.pow(2) * &pi_bar), 1).unwrap());
        assert!(!friend_shape_filter(&five, &(&el(-1, 1, 1) * &five), 1).unwrap());
        assert!(friend_shape_filter(&five, &(&pi.pow(3) * &pi_bar), 3).unwrap());
        assert_eq!(
            friend_shape_filter(&five, &el(-1, 15, 0), 2),
            Err(Error::ShapeMismatch)
        );
        assert_eq!(
            friend_shape_filter(&el(-1, 25, 0), &five, 1),
            Err(Error::ShapeMismatch)
        );
        assert_eq!(
            friend_shape_filter(&pi, &five, 1),
            Err(Error::ShapeMismatch)
        );
    }

    #[test]
    fn exponent_equation_examples() {
        assert!(exponent_equation_holds(2, [1, 2, 1, 2]));
        assert!(exponent_equation_holds(2, [1, 2, 2, 1]));
        assert!(!exponent_equation_holds(2, [0, 1, 0, 2]));
        let r = verify_lemma_3_5(3, 4).unwrap();
        assert!(r.holds());
        assert_eq!(r.checked, 625);
        // (m₁, m₂) free, then two orderings except on the diagonal
        assert_eq!(r.solutions.len(), 25 + 20);
        assert!(verify_lemma_3_5(4, 2).is_err());
    }
}
