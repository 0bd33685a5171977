#![allow(dead_code)]

use num_bigint::BigInt;
use quadabund::surd::is_square_free;
use quadabund::{Rational, Surd};
use rand::Rng;

pub const SMALL_PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// Square-free `w ≤ 210`, optionally forced to be (or not be) divisible by `p`.
fn square_free<R: Rng>(rng: &mut R, p: i64, divisible: Option<bool>) -> i64 {
    loop {
        let w: i64 = rng.gen_range(1..=210);
        if !is_square_free(&w) {
            continue;
        }
        match divisible {
            Some(true) if w % p != 0 => continue,
            Some(false) if w % p == 0 => continue,
            _ => return w,
        }
    }
}

fn coefficient<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let num: i64 = rng.gen_range(-20..=20);
        if num != 0 {
            return Rational::new(num.into(), rng.gen_range(1i64..=12).into());
        }
    }
}

/// 1 to 4 terms; `sqrt_p` selects whether the value has a `√p` part.
pub fn random_surd<R: Rng>(rng: &mut R, p: i64, sqrt_p: bool) -> Surd {
    loop {
        let count = rng.gen_range(1..=4);
        let mut terms = Vec::with_capacity(count);
        if sqrt_p {
            terms.push((
                BigInt::from(square_free(rng, p, Some(true))),
                coefficient(rng),
            ));
        }
        while terms.len() < count {
            terms.push((
                BigInt::from(square_free(rng, p, Some(false))),
                coefficient(rng),
            ));
        }
        let r = Surd::from_terms(terms).expect("positive radicands");
        if !r.is_zero() && r.has_sqrt_p_part(&BigInt::from(p)).unwrap() == sqrt_p {
            return r;
        }
    }
}

/// Any surd, possibly zero.
pub fn any_surd<R: Rng>(rng: &mut R) -> Surd {
    let count = rng.gen_range(0..=4);
    let terms = (0..count).map(|_| (BigInt::from(rng.gen_range(1i64..=60)), coefficient(rng)));
    Surd::from_terms(terms).expect("positive radicands")
}
