//! Brute-force ground truth.
//!
//! The predicates here work on bitmasks over a pool sorted by id and compare
//! every hired/unhired pair directly. They share no code with the checkers
//! in [`crate::properties`], so each side can test the other.

mod corpus;
mod equivalence;
mod transform;

use std::collections::BTreeSet;

use itertools::Itertools;
use thiserror::Error;

use crate::model::{Rational, Rule, Worker, WorkerId};

pub use corpus::{generate_instance, CorpusSpec, DEFAULT_RATIOS};
pub use equivalence::{oracle_equivalence, EquivalenceReport, Semantics, TrialRecord, TrialVerdict};
pub use transform::{transform_search, TransformResult};

pub const MAX_ORACLE_POOL: usize = 20;
pub const MAX_TRANSFORM_POOL: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("pool of {size} workers exceeds the oracle bound of {max}")]
    PoolTooLarge { size: usize, max: usize },
    #[error("cannot hire {q} from a pool of {pool}")]
    QExceedsPool { q: usize, pool: usize },
    #[error("no subset of size {q} is minority fair and respects minority rights")]
    NoFairSet { q: usize },
    #[error("{} subsets of size {q} qualify, first two: {:?}", .count, .first)]
    MultipleFairSets {
        q: usize,
        count: usize,
        first: Vec<Vec<WorkerId>>,
    },
    #[error("worker {0} has no score")]
    MissingScore(WorkerId),
    #[error("rule {0} is not covered by the random corpus")]
    UnsupportedRule(Rule),
    #[error("unknown worker {0} in a subpool")]
    UnknownWorker(WorkerId),
}

/// A pool in id order with scores and minority flags packed for subset
/// enumeration.
#[derive(Clone, Debug)]
pub(crate) struct Pool {
    pub ids: Vec<WorkerId>,
    pub scores: Vec<Rational>,
    pub minority: u32,
    pub m: Rational,
}

impl Pool {
    pub fn new(workers: &[Worker], m: Rational, max: usize) -> Result<Self, OracleError> {
        if workers.len() > max {
            return Err(OracleError::PoolTooLarge {
                size: workers.len(),
                max,
            });
        }
        let mut sorted: Vec<&Worker> = workers.iter().collect();
        sorted.sort_by(|a, b| a.id.cmp(&b.id));
        let mut scores = Vec::with_capacity(sorted.len());
        let mut minority = 0u32;
        for (bit, w) in sorted.iter().enumerate() {
            scores.push(w.merit().ok_or_else(|| OracleError::MissingScore(w.id.clone()))?);
            if w.is_minority() {
                minority |= 1 << bit;
            }
        }
        Ok(Self {
            ids: sorted.iter().map(|w| w.id.clone()).collect(),
            scores,
            minority,
            m,
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn full(&self) -> u32 {
        if self.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.len()) - 1
        }
    }

    pub fn bit(&self, id: &WorkerId) -> Option<u32> {
        self.ids.iter().position(|x| x == id).map(|i| 1 << i)
    }

    pub fn members(&self, mask: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |i| mask >> i & 1 == 1)
    }

    pub fn set(&self, mask: u32) -> BTreeSet<WorkerId> {
        self.members(mask).map(|i| self.ids[i].clone()).collect()
    }

    /// Minority rights of `hired` within the sub-pool `within`.
    pub fn respects_rights(&self, hired: u32, within: u32) -> bool {
        let size = Rational::from_integer(hired.count_ones() as i64);
        let omega = Rational::from_integer((hired & self.minority).count_ones() as i64);
        let available = Rational::from_integer((within & self.minority).count_ones() as i64);
        if available >= self.m * size {
            omega >= self.m * size
        } else {
            within & self.minority & !hired == 0
        }
    }

    /// Minority fairness of `hired` within `within`, pair by pair.
    pub fn is_minority_fair(&self, hired: u32, within: u32) -> bool {
        let size = Rational::from_integer(hired.count_ones() as i64);
        let omega = (hired & self.minority).count_ones() as i64;
        // ω > ⌈m|H|⌉ exactly when ω − 1 ≥ m|H|, as ω is an integer.
        let over_cap = Rational::from_integer(omega - 1) >= self.m * size;
        let is_min = |i: usize| self.minority >> i & 1 == 1;
        for a in self.members(hired) {
            for b in self.members(within & !hired) {
                if self.scores[a] > self.scores[b] {
                    continue;
                }
                let bad = match (is_min(a), is_min(b)) {
                    (x, y) if x == y => true,
                    (false, true) => true,
                    (true, false) => over_cap,
                    _ => unreachable!(),
                };
                if bad {
                    return false;
                }
            }
        }
        true
    }

    pub fn qualifies(&self, hired: u32, within: u32) -> bool {
        self.respects_rights(hired, within) && self.is_minority_fair(hired, within)
    }
}

/// The unique size-`q` subset together with the number of subsets examined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FairSet {
    pub set: BTreeSet<WorkerId>,
    pub examined: u64,
}

/// Enumerates every size-`q` subset, in lexicographic order of sorted ids,
/// and returns the only one that is minority fair and respects minority
/// rights. Zero or several survivors are errors.
pub fn unique_fair_set(workers: &[Worker], m: Rational, q: usize) -> Result<FairSet, OracleError> {
    let pool = Pool::new(workers, m, MAX_ORACLE_POOL)?;
    unique_in(&pool, q)
}

pub(crate) fn unique_in(pool: &Pool, q: usize) -> Result<FairSet, OracleError> {
    if q > pool.len() {
        return Err(OracleError::QExceedsPool { q, pool: pool.len() });
    }
    let full = pool.full();
    let mut examined = 0u64;
    let mut found: Vec<u32> = Vec::new();
    for combo in (0..pool.len()).combinations(q) {
        examined += 1;
        let mask = combo.iter().fold(0u32, |acc, &i| acc | 1 << i);
        if pool.qualifies(mask, full) {
            found.push(mask);
        }
    }
    match found.as_slice() {
        [] => Err(OracleError::NoFairSet { q }),
        [only] => Ok(FairSet {
            set: pool.set(*only),
            examined,
        }),
        many => Err(OracleError::MultipleFairSets {
            q,
            count: many.len(),
            first: many.iter().take(2).map(|&s| pool.set(s).into_iter().collect()).collect(),
        }),
    }
}

/// Whether `hired` is minority fair and respects minority rights in `workers`.
pub fn is_fair_set(workers: &[Worker], m: Rational, hired: &BTreeSet<WorkerId>) -> Result<bool, OracleError> {
    let pool = Pool::new(workers, m, 32)?;
    let mut mask = 0u32;
    for id in hired {
        mask |= pool.bit(id).ok_or_else(|| OracleError::UnknownWorker(id.clone()))?;
    }
    Ok(pool.qualifies(mask, pool.full()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ids;

    fn five_workers() -> Vec<Worker> {
        [(100, true), (90, true), (80, false), (50, false), (20, true)]
            .iter()
            .enumerate()
            .map(|(i, &(s, m))| Worker::new(format!("w{}", i + 1), s).minority(m))
            .collect()
    }

    #[test]
    fn five_worker_unique_set() {
        let r = unique_fair_set(&five_workers(), Rational::new(1, 2), 4).unwrap();
        assert_eq!(r.set, ids(["w1", "w2", "w3", "w4"]));
        assert_eq!(r.examined, 5);
    }

    #[test]
    fn full_pool_and_zero_ratio() {
        let w = five_workers();
        assert_eq!(unique_fair_set(&w, Rational::new(1, 2), 5).unwrap().set.len(), 5);
        let r = unique_fair_set(&w, Rational::from_integer(0), 3).unwrap();
        assert_eq!(r.set, ids(["w1", "w2", "w3"]));
    }

    #[test]
    fn ratio_sets() {
        let w = five_workers();
        let half = Rational::new(1, 2);
        assert!(is_fair_set(&w, half, &ids(["w1", "w2", "w3", "w4"])).unwrap());
        assert!(!is_fair_set(&w, half, &ids(["w1", "w2", "w3", "w5"])).unwrap());
    }

    #[test]
    fn insufficient_minorities_still_unique() {
        // One minority at m = 1: the rights clause forces it in.
        let w: Vec<_> = (1..=4).map(|i| Worker::new(format!("w{i}"), 10 * i as i64).minority(i == 1)).collect();
        let r = unique_fair_set(&w, Rational::from_integer(1), 2).unwrap();
        assert_eq!(r.set, ids(["w1", "w4"]));
    }

    #[test]
    fn bounds() {
        let many: Vec<_> = (0..21).map(|i| Worker::new(format!("w{i:02}"), i)).collect();
        assert_eq!(
            unique_fair_set(&many, Rational::from_integer(0), 1).unwrap_err(),
            OracleError::PoolTooLarge { size: 21, max: 20 }
        );
        assert_eq!(
            unique_fair_set(&five_workers(), Rational::from_integer(0), 6).unwrap_err(),
            OracleError::QExceedsPool { q: 6, pool: 5 }
        );
    }
}
