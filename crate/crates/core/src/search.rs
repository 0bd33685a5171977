//! Exhaustive enumeration of `A(d)` up to a norm bound, exact grouping by
//! `Iₙ`, and targeted probes for friends of `p^k`.
//!
//! The scan phase splits the norm-ordered element list into contiguous
//! shards, one per worker, with no shared mutable state; the merge phase is
//! single-threaded and sorts everything, so output does not depend on the
//! worker count.

use std::collections::{BTreeSet, HashMap};
use std::thread;
use std::time::{Duration, Instant};

use crate::abundancy::index_from_factorization;
use crate::error::{Error, Result};
use crate::factor::{factor, is_prime, Factorization, DEFAULT_CEILING};
use crate::ring::{lattice_points, RingElement, RingId};
use crate::scalar::Scalar;
use crate::solitary::{certify_from_factorization, certify_solitary, FriendShape, Reason};
use crate::surd::SurdValue;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "QUADABUND_WORKERS";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn default_workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Member<T> {
    pub element: RingElement<T>,
    pub norm: T,
}

impl<T: Scalar> Member<T> {
    pub fn new(element: RingElement<T>) -> Self {
        let norm = element.norm();
        Self { element, norm }
    }
}

/// Elements sharing one exact `Iₙ` value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendGroup<T: Scalar> {
    pub ring: RingId,
    pub n: i64,
    pub index_key: SurdValue<T>,
    /// Sorted by `(norm, a, b)`.
    pub members: Vec<Member<T>>,
}

impl<T: Scalar> FriendGroup<T> {
    pub fn distinct_norms(&self) -> usize {
        self.members
            .iter()
            .map(|m| &m.norm)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// At least two members with different absolute values.
    pub fn is_friend_set(&self) -> bool {
        self.distinct_norms() >= 2
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport<T: Scalar> {
    pub ring: RingId,
    pub n: i64,
    pub norm_bound: u64,
    pub prune: bool,
    /// Friend sets only, ordered by their smallest member.
    pub groups: Vec<FriendGroup<T>>,
    /// Enumerated elements.
    pub scanned: u64,
    /// Enumerated elements that [`certify_solitary`] certifies.
    pub certified_count: u64,
    /// Targets whose `Iₙ` was never evaluated because no admissible friend
    /// exists within the bound.
    pub pruned: u64,
    pub elapsed: Duration,
    pub version: String,
}

/// Timing and pruning statistics are not part of a report's identity.
impl<T: Scalar> PartialEq for SearchReport<T> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && self.n == other.n
            && self.norm_bound == other.norm_bound
            && self.groups == other.groups
            && self.scanned == other.scanned
            && self.certified_count == other.certified_count
            && self.version == other.version
    }
}

/// Every `z ∈ A(d)` with `1 ≤ N(z) ≤ norm_bound`, sorted by `(norm, a, b)`.
pub fn enumerate_in_sector<T: Scalar>(ring: RingId, norm_bound: u64) -> Vec<RingElement<T>> {
    let bound = T::from_u64_exact(norm_bound);
    let mut out: Vec<_> = lattice_points(ring, &bound)
        .into_iter()
        .filter(|z| z.is_in_sector().unwrap_or(false))
        .collect();
    out.sort_by_cached_key(|z| z.sort_key());
    out
}

fn check_n(n: i64) -> Result<()> {
    if n < 1 {
        Err(Error::InvalidExponent(n))
    } else {
        Ok(())
    }
}

/// Runs `work` over contiguous shards of `items` and concatenates the
/// per-shard outputs in shard order.
fn sharded<I, O, F>(items: &[I], workers: usize, work: F) -> Result<Vec<O>>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> Result<O> + Sync,
{
    let workers = workers.max(1);
    if workers == 1 || items.len() < 2 {
        return items.iter().map(&work).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let work = &work;
    let parts: Vec<Result<Vec<O>>> = thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|shard| scope.spawn(move || shard.iter().map(work).collect::<Result<Vec<O>>>()))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

struct Scanned<T: Scalar> {
    member: Member<T>,
    factorization: Factorization<T>,
    certified: bool,
    /// `None` for deferred shape targets.
    key: Option<SurdValue<T>>,
    shape: Option<FriendShape<T>>,
}

/// `(element, Iₙ)` for every element of `A(d)` up to the bound, in
/// `(norm, a, b)` order.
pub fn index_table<T: Scalar>(
    ring: RingId,
    n: i64,
    norm_bound: u64,
    workers: usize,
) -> Result<Vec<(Member<T>, SurdValue<T>)>> {
    check_n(n)?;
    let elements = enumerate_in_sector::<T>(ring, norm_bound);
    sharded(&elements, workers, |z| {
        let f = factor(z)?;
        let key = index_from_factorization(z, &f, n)?.into_inner();
        Ok((Member::new(z.clone()), key))
    })
}

/// Groups every element of `A(d)` with norm at most `norm_bound` by its exact
/// `Iₙ` and keeps the groups containing two different norms.
///
/// With `prune` and odd `n`, each element of the form `π^k₁·π̄^k₂` (`k₁, k₂`
/// odd) is a target whose only possible friends pass
/// [`FriendShape::admits`]. Candidates failing the filter are never matched
/// against it, and a target with no admissible candidate of a different norm
/// is dropped before its `Iₙ` is evaluated.
pub fn friend_search<T: Scalar>(
    ring: RingId,
    n: i64,
    norm_bound: u64,
    prune: bool,
    workers: usize,
) -> Result<SearchReport<T>> {
    check_n(n)?;
    let started = Instant::now();
    let elements = enumerate_in_sector::<T>(ring, norm_bound);
    let scanned: Vec<Scanned<T>> = sharded(&elements, workers, |z| {
        let f = factor(z)?;
        let shape = if prune {
            FriendShape::of_factorization(&f, n)
        } else {
            None
        };
        let key = match shape {
            Some(_) => None,
            None => Some(index_from_factorization(z, &f, n)?.into_inner()),
        };
        let certified = certify_from_factorization(f.clone(), n).is_certified();
        Ok(Scanned {
            member: Member::new(z.clone()),
            factorization: f,
            certified,
            key,
            shape,
        })
    })?;

    // candidates holding a prime to an odd power, by prime
    let mut odd_holders: HashMap<&RingElement<T>, Vec<usize>> = HashMap::new();
    if scanned.iter().any(|s| s.shape.is_some()) {
        for (i, s) in scanned.iter().enumerate() {
            for (q, e) in s.factorization.factors() {
                if e % 2 == 1 {
                    odd_holders.entry(q).or_default().push(i);
                }
            }
        }
    }

    let mut pruned = 0;
    let mut by_key: HashMap<SurdValue<T>, Vec<usize>> = HashMap::new();
    for (i, s) in scanned.iter().enumerate() {
        let key = match (&s.key, &s.shape) {
            (Some(key), _) => key.clone(),
            (None, Some(shape)) => {
                let admissible = odd_holders.get(shape.pi()).is_some_and(|idx| {
                    idx.iter().any(|&j| {
                        let c = &scanned[j];
                        c.member.norm != s.member.norm && shape.admits(&c.factorization)
                    })
                });
                if !admissible {
                    pruned += 1;
                    continue;
                }
                index_from_factorization(&s.member.element, &s.factorization, n)?.into_inner()
            }
            (None, None) => unreachable!("only shape targets are deferred"),
        };
        by_key.entry(key).or_default().push(i);
    }

    let mut groups: Vec<FriendGroup<T>> = by_key
        .into_iter()
        .map(|(index_key, mut idx)| {
            idx.sort_unstable();
            FriendGroup {
                ring,
                n,
                index_key,
                members: idx.into_iter().map(|i| scanned[i].member.clone()).collect(),
            }
        })
        .filter(FriendGroup::is_friend_set)
        .collect();
    groups.sort_by_cached_key(|g| g.members[0].element.sort_key());

    Ok(SearchReport {
        ring,
        n,
        norm_bound,
        prune,
        groups,
        scanned: scanned.len() as u64,
        certified_count: scanned.iter().filter(|s| s.certified).count() as u64,
        pruned,
        elapsed: started.elapsed(),
        version: VERSION.to_string(),
    })
}

/// Result of scanning for friends of `p^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport<T: Scalar> {
    pub ring: RingId,
    pub n: i64,
    pub p: u64,
    pub k: u32,
    pub norm_bound: u64,
    pub index: SurdValue<T>,
    pub certificate: Option<Reason>,
    /// Elements of a different norm with the same `Iₙ`: counterexamples.
    pub hits: Vec<Member<T>>,
    pub scanned: u64,
}

impl<T: Scalar> ProbeReport<T> {
    pub fn found_friend(&self) -> bool {
        !self.hits.is_empty()
    }
}

/// Scans `A(d)` up to `norm_bound` for an element with `Iₙ(x) = Iₙ(p^k)` and
/// `|x| ≠ |p^k|`.
pub fn conjecture_probe<T: Scalar>(
    ring: RingId,
    n: i64,
    p: u64,
    k: u32,
    norm_bound: u64,
    workers: usize,
) -> Result<ProbeReport<T>> {
    let table = index_table::<T>(ring, n, norm_bound, workers)?;
    probe_against_table(ring, n, p, k, norm_bound, &table)
}

/// [`conjecture_probe`] against a precomputed [`index_table`].
pub fn probe_against_table<T: Scalar>(
    ring: RingId,
    n: i64,
    p: u64,
    k: u32,
    norm_bound: u64,
    table: &[(Member<T>, SurdValue<T>)],
) -> Result<ProbeReport<T>> {
    check_n(n)?;
    let p_t = T::from_u64_exact(p);
    if !is_prime(&p_t) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if k < 1 {
        return Err(Error::NotPositive(k.to_string()));
    }
    let target = RingElement::from_integer(ring, p_t.pow_u32(k));
    let target_norm = target.norm();
    let ceiling = T::from_u64_exact(DEFAULT_CEILING);
    if target_norm > ceiling {
        return Err(Error::FactorizationOverflow {
            norm: target_norm.to_string(),
            ceiling: ceiling.to_string(),
        });
    }
    let f = factor(&target)?;
    let index = index_from_factorization(&target, &f, n)?.into_inner();
    let certificate = certify_solitary(&target, n)?.reason();
    let hits = table
        .iter()
        .filter(|(m, key)| m.norm != target_norm && *key == index)
        .map(|(m, _)| m.clone())
        .collect();
    Ok(ProbeReport {
        ring,
        n,
        p,
        k,
        norm_bound,
        index,
        certificate,
        hits,
        scanned: table.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type E = RingElement<i64>;

    #[test]
    fn enumerate_examples() {
        let g = enumerate_in_sector::<i64>(RingId::GAUSSIAN, 2);
        assert_eq!(
            g,
            vec![
                E::from_i64(RingId::GAUSSIAN, 1, 0),
                E::from_i64(RingId::GAUSSIAN, 1, 1)
            ]
        );
        let r7 = RingId::new(-7).unwrap();
        assert_eq!(
            enumerate_in_sector::<i64>(r7, 1),
            vec![E::from_i64(r7, 1, 0)]
        );
        // associate classes of Gaussian integers with norm ≤ 100 = lattice points / 4
        let lattice = lattice_points::<i64>(RingId::GAUSSIAN, &100).len();
        assert_eq!(
            enumerate_in_sector::<i64>(RingId::GAUSSIAN, 100).len() * 4,
            lattice
        );
    }

    #[test]
    fn equal_norm_members_are_not_friends() {
        let report = friend_search::<i64>(RingId::GAUSSIAN, 2, 200, false, 2).unwrap();
        let z = E::from_i64(RingId::GAUSSIAN, 9, 3);
        let w = E::from_i64(RingId::GAUSSIAN, 3, 9);
        for g in &report.groups {
            assert!(g.is_friend_set());
            let has = |e: &E| g.members.iter().any(|m| &m.element == e);
            if has(&z) || has(&w) {
                // any group holding them must owe its friend status to another norm
                assert!(g.members.iter().any(|m| m.norm != 90));
            }
        }
    }

    #[test]
    fn group_friend_set_rule() {
        let ring = RingId::GAUSSIAN;
        let m = |a, b| Member::new(E::from_i64(ring, a, b));
        let mut g = FriendGroup {
            ring,
            n: 2,
            index_key: SurdValue::from_integer(2),
            members: vec![m(9, 3), m(3, 9)],
        };
        assert!(!g.is_friend_set());
        g.members.push(m(10, 0));
        assert!(g.is_friend_set());
    }

    #[test]
    fn workers_do_not_change_reports() {
        let a = friend_search::<i64>(RingId::new(-2).unwrap(), 1, 300, false, 1).unwrap();
        let b = friend_search::<i64>(RingId::new(-2).unwrap(), 1, 300, false, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn probe_rejects_bad_input() {
        assert!(conjecture_probe::<i64>(RingId::GAUSSIAN, 1, 4, 1, 10, 1).is_err());
        assert!(conjecture_probe::<i64>(RingId::GAUSSIAN, 1, 5, 0, 10, 1).is_err());
        assert!(conjecture_probe::<i64>(RingId::GAUSSIAN, 0, 5, 1, 10, 1).is_err());
        assert!(matches!(
            conjecture_probe::<i64>(RingId::GAUSSIAN, 1, 10_007, 2, 10, 1),
            Err(Error::FactorizationOverflow { .. })
        ));
    }
}
