//! The field of finite rational combinations `Σ cᵢ·√wᵢ` over square-free
//! positive integers `wᵢ`.
//!
//! Values are kept in a unique normal form (terms sorted by `w`, reduced
//! rational coefficients, no zeros), so structural equality and hashing are
//! value equality. `w = 1` holds the rational part.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::is_prime;
use crate::scalar::Scalar;

/// Exact element of the surd field.
#[derive(Clone, Debug)]
pub struct SurdValue<T: Scalar> {
    terms: Vec<(T, Ratio<T>)>,
}

/// `n = s²·m` with `m` square-free.
pub fn square_free_decompose<T: Scalar>(n: &T) -> Result<(T, T)> {
    if !n.is_positive() {
        return Err(Error::NotPositive(n.to_string()));
    }
    let mut rest = n.clone();
    let mut s = T::one();
    let mut m = T::one();
    let mut p = T::from_i64_exact(2);
    while p.clone() * p.clone() <= rest {
        let p2 = p.clone() * p.clone();
        while (rest.clone() % p2.clone()).is_zero() {
            rest = rest / p2.clone();
            s = s * p.clone();
        }
        if (rest.clone() % p.clone()).is_zero() {
            rest = rest / p.clone();
            m = m * p.clone();
        }
        p = p + T::one();
    }
    Ok((s, m * rest))
}

pub fn is_square_free<T: Scalar>(n: &T) -> bool {
    matches!(square_free_decompose(n), Ok((s, _)) if s.is_one())
}

/// Smallest prime factor of `n > 1`.
fn least_prime_factor<T: Scalar>(n: &T) -> T {
    let mut p = T::from_i64_exact(2);
    while p.clone() * p.clone() <= *n {
        if (n.clone() % p.clone()).is_zero() {
            return p;
        }
        p = p + T::one();
    }
    n.clone()
}

impl<T: Scalar> SurdValue<T> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_integer(T::one())
    }

    pub fn from_integer(n: T) -> Self {
        Self::from_rational(Ratio::from_integer(n))
    }

    pub fn from_rational(r: Ratio<T>) -> Self {
        if r.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(T::one(), r)],
            }
        }
    }

    /// `c·√w` for any positive `w`; square factors of `w` are pulled out.
    pub fn monomial(c: Ratio<T>, w: &T) -> Result<Self> {
        let (s, m) = square_free_decompose(w)?;
        let c = c * Ratio::from_integer(s);
        if c.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self {
            terms: vec![(m, c)],
        })
    }

    /// Sums arbitrary `(w, c)` pairs into normal form.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, Ratio<T>)>,
    {
        let mut acc = BTreeMap::new();
        for (w, c) in terms {
            let (s, m) = square_free_decompose(&w)?;
            accumulate(&mut acc, m, c * Ratio::from_integer(s));
        }
        Ok(Self::from_map(acc))
    }

    fn from_map(map: BTreeMap<T, Ratio<T>>) -> Self {
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `(w, c)` pairs, strictly increasing in `w`, no zero coefficients.
    pub fn terms(&self) -> &[(T, Ratio<T>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(w, _)| w.is_one())
    }

    pub fn to_rational(&self) -> Option<Ratio<T>> {
        match self.terms.as_slice() {
            [] => Some(Ratio::zero()),
            [(w, c)] if w.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Coefficient of `√w`, zero when absent.
    pub fn coefficient(&self, w: &T) -> Result<Ratio<T>> {
        if !is_square_free(w) {
            return Err(Error::NotSquareFree(w.to_string()));
        }
        Ok(self
            .terms
            .binary_search_by(|(k, _)| k.cmp(w))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Ratio::zero()))
    }

    /// Whether some `√w` with `p | w` carries a nonzero coefficient.
    pub fn has_sqrt_p_part(&self, p: &T) -> Result<bool> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(self
            .terms
            .iter()
            .any(|(w, _)| !w.is_one() && (w.clone() % p.clone()).is_zero()))
    }

    /// `s·√m` where `N = s²·m`.
    pub fn sqrt_of_integer(n: &T) -> Result<Self> {
        Self::monomial(Ratio::one(), n)
    }

    /// `1/(c·√w) = (1/(c·w))·√w`.
    pub fn invert_monomial(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [(w, c)] => {
                let inv = (c.clone() * Ratio::from_integer(w.clone())).recip();
                Ok(Self {
                    terms: vec![(w.clone(), inv)],
                })
            }
            _ => Err(Error::NonMonomial),
        }
    }

    /// Integer power of a monomial; negative exponents invert first.
    pub fn monomial_pow(&self, exp: i64) -> Result<Self> {
        if !self.is_monomial() {
            return Err(Error::NonMonomial);
        }
        let base = if exp < 0 {
            self.invert_monomial()?
        } else {
            self.clone()
        };
        let e = exp.unsigned_abs();
        let (w, c) = &base.terms[0];
        let e32 = u32::try_from(e).map_err(|_| Error::InvalidExponent(exp))?;
        // (c√w)^e = c^e · w^⌊e/2⌋ · √w^(e mod 2)
        let coeff =
            num_traits::pow(c.clone(), e as usize) * Ratio::from_integer(w.pow_u32(e32 / 2));
        let root = if e % 2 == 1 { w.clone() } else { T::one() };
        Ok(Self {
            terms: vec![(root, coeff)],
        })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign: `Less`, `Equal` or `Greater` than zero.
    pub fn signum(&self) -> Ordering {
        sign_of(&self.terms)
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(w, c)| {
                let cf =
                    c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
                cf * w.to_f64().unwrap_or(f64::NAN).sqrt()
            })
            .sum()
    }

    /// Parses the canonical display syntax, e.g. `"1 + 1/5*sqrt(5)"`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse {
            line: 0,
            message: m,
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty surd".into()));
        }
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            let c = bytes[i];
            let prev = bytes[i - 1];
            if (c == b'+' || c == b'-') && !matches!(prev, b'*' | b'/' | b'(' | b'+' | b'-') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut terms = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            let (coef_str, w) = if let Some(idx) = body.find("sqrt(") {
                let inner = body[idx + 5..]
                    .strip_suffix(')')
                    .ok_or_else(|| bad(format!("unclosed sqrt in {piece:?}")))?;
                let w = T::parse_decimal(inner)?;
                if !w.is_positive() {
                    return Err(bad(format!("non-positive radicand in {piece:?}")));
                }
                let head = &body[..idx];
                let coef = match head {
                    "" => "1",
                    h => h
                        .strip_suffix('*')
                        .ok_or_else(|| bad(format!("expected '*' before sqrt in {piece:?}")))?,
                };
                (coef, w)
            } else {
                (body, T::one())
            };
            let mut c = parse_rational::<T>(coef_str)?;
            if neg {
                c = -c;
            }
            terms.push((w, c));
        }
        Self::from_terms(terms)
    }
}

fn parse_rational<T: Scalar>(s: &str) -> Result<Ratio<T>> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = T::parse_decimal(d)?;
            if d.is_zero() {
                return Err(Error::Parse {
                    line: 0,
                    message: "zero denominator".into(),
                });
            }
            Ok(Ratio::new(T::parse_decimal(n)?, d))
        }
        None => Ok(Ratio::from_integer(T::parse_decimal(s)?)),
    }
}

fn accumulate<T: Scalar>(acc: &mut BTreeMap<T, Ratio<T>>, w: T, c: Ratio<T>) {
    let slot = acc.entry(w).or_insert_with(Ratio::zero);
    *slot = slot.clone() + c;
}

fn sign_of_ratio<T: Scalar>(r: &Ratio<T>) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Writes `r = A + B·√p` for a prime `p` dividing some radicand, then decides
/// the sign from `sign(A)`, `sign(B)` and, when they disagree, from the sign
/// of `A² − p·B²`. Each level removes one prime from the radicands.
fn sign_of<T: Scalar>(terms: &[(T, Ratio<T>)]) -> Ordering {
    match terms {
        [] => return Ordering::Equal,
        [(_, c)] => return sign_of_ratio(c),
        _ => {}
    }
    let largest = &terms.last().expect("nonempty").0;
    if largest.is_one() {
        return sign_of_ratio(&terms[0].1);
    }
    let p = least_prime_factor(largest);
    let mut without = Vec::new();
    let mut with = Vec::new();
    for (w, c) in terms {
        if (w.clone() % p.clone()).is_zero() {
            with.push((w.clone() / p.clone(), c.clone()));
        } else {
            without.push((w.clone(), c.clone()));
        }
    }
    let a = SurdValue { terms: without };
    let b = SurdValue { terms: with };
    let sa = a.signum();
    let sb = b.signum();
    if sb == Ordering::Equal || sa == sb {
        return sa;
    }
    if sa == Ordering::Equal {
        return sb;
    }
    let p_surd = SurdValue::from_integer(p);
    let gap = &(&a * &a) - &(&(&b * &b) * &p_surd);
    match gap.signum() {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => unreachable!("A² = pB² forces A = B = 0 in the surd field"),
    }
}

fn merge<T: Scalar>(x: &[(T, Ratio<T>)], y: &[(T, Ratio<T>)], negate_y: bool) -> SurdValue<T> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let flip = |c: &Ratio<T>| if negate_y { -c.clone() } else { c.clone() };
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), y.get(j)) {
            (Some((wx, _)), Some((wy, _))) => wx.cmp(wy),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(x[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((y[j].0.clone(), flip(&y[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = x[i].1.clone() + flip(&y[j].1);
                if !c.is_zero() {
                    out.push((x[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    SurdValue { terms: out }
}

impl<T: Scalar> PartialEq for SurdValue<T> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<T: Scalar> Eq for SurdValue<T> {}

impl<T: Scalar> Hash for SurdValue<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

/// Orders by real value; consistent with `Eq` because the normal form is unique.
impl<T: Scalar> Ord for SurdValue<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self - other).signum()
    }
}

impl<T: Scalar> PartialOrd for SurdValue<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a, T: Scalar> Add<&'a SurdValue<T>> for &'a SurdValue<T> {
    type Output = SurdValue<T>;

    fn add(self, rhs: &'a SurdValue<T>) -> SurdValue<T> {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a, T: Scalar> Sub<&'a SurdValue<T>> for &'a SurdValue<T> {
    type Output = SurdValue<T>;

    fn sub(self, rhs: &'a SurdValue<T>) -> SurdValue<T> {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a, T: Scalar> Mul<&'a SurdValue<T>> for &'a SurdValue<T> {
    type Output = SurdValue<T>;

    /// `√w₁·√w₂ = g·√((w₁/g)(w₂/g))` with `g = gcd(w₁, w₂)`; the cofactors
    /// are coprime and square-free, so their product is square-free.
    fn mul(self, rhs: &'a SurdValue<T>) -> SurdValue<T> {
        let mut acc = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let g = w1.gcd(w2);
                let w = (w1.clone() / g.clone()) * (w2.clone() / g.clone());
                let c = c1.clone() * c2.clone() * Ratio::from_integer(g);
                accumulate(&mut acc, w, c);
            }
        }
        SurdValue::from_map(acc)
    }
}

impl<T: Scalar> Add for SurdValue<T> {
    type Output = SurdValue<T>;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for SurdValue<T> {
    type Output = SurdValue<T>;

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<T: Scalar> Mul for SurdValue<T> {
    type Output = SurdValue<T>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<T: Scalar> Neg for SurdValue<T> {
    type Output = SurdValue<T>;

    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<T: Scalar> fmt::Display for SurdValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt({w})")?;
            } else {
                write!(f, "{mag}*sqrt({w})")?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> FromStr for SurdValue<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
