//! Single-institution hiring engines.
//!
//! Every engine walks the rounds of a sequence, hires from the workers not
//! yet hired (prior hires are never available) and records each round in a
//! [`RoundLedger`].

mod brazil;
mod french;
mod nsw;
mod reserves;

use num_integer::Integer;
use thiserror::Error;

use crate::model::{
    top_indices, Rational, RoundLedger, RoundRecord, Rule, ScoreProfile, Selection,
    ValidatedScenario,
};

pub use brazil::{brazil_partition, run_brazil};
pub use french::{run_french, FrenchPolicy};
pub use nsw::run_nsw;
pub use reserves::{run_sa, run_sm, run_sp};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("k = {k} is below the {total} requested hires")]
    KTooSmall { k: usize, total: usize },
    #[error("round {0} requests an odd number of hires under the NSW rule")]
    OddNswRound(usize),
    #[error("round {0} requests zero hires")]
    ZeroRound(usize),
}

/// Runs the scenario's own rule on its own sequence.
pub fn run(scenario: &ValidatedScenario) -> Result<Selection, RuleError> {
    run_sequence(scenario, scenario.sequence())
}

/// Runs the scenario's rule on an arbitrary sequence of hires.
pub fn run_sequence(scenario: &ValidatedScenario, sequence: &[usize]) -> Result<Selection, RuleError> {
    let rule = scenario.rule();
    for (r, &q) in sequence.iter().enumerate() {
        if q == 0 {
            return Err(RuleError::ZeroRound(r + 1));
        }
        if !rule.admits_round(q) {
            return Err(RuleError::OddNswRound(r + 1));
        }
    }
    Ok(match rule {
        Rule::Sp => reserves::sp(scenario, sequence),
        Rule::Sm => reserves::sm(scenario, sequence),
        Rule::Sa => reserves::sa(scenario, sequence),
        Rule::Brazil => brazil::brazil(scenario, sequence)?,
        Rule::FrenchP1 => french::french(scenario, sequence, FrenchPolicy::P1),
        Rule::FrenchP2 => french::french(scenario, sequence, FrenchPolicy::P2),
        Rule::Nsw => nsw::nsw(scenario, sequence),
    })
}

/// `⌈ratio × n⌉` in exact arithmetic.
pub fn ceil_mul(ratio: Rational, n: usize) -> usize {
    let p = ratio * Rational::from_integer(n as i64);
    p.numer().div_ceil(p.denom()).max(0) as usize
}

/// Mutable bookkeeping shared by the engines.
pub(crate) struct RoundState<'a> {
    scenario: &'a ValidatedScenario,
    available: Vec<bool>,
    hired: Vec<usize>,
    minority_count: usize,
    total: usize,
    rounds: Vec<RoundRecord>,
}

impl<'a> RoundState<'a> {
    pub(crate) fn new(scenario: &'a ValidatedScenario) -> Self {
        let n = scenario.workers().len();
        let available: Vec<bool> = (0..n).map(|i| !scenario.is_prior(i)).collect();
        let minority_count = (0..n)
            .filter(|&i| scenario.is_prior(i) && scenario.worker(i).is_minority())
            .count();
        Self {
            scenario,
            available,
            hired: Vec::new(),
            minority_count,
            total: scenario.prior_count(),
            rounds: Vec::new(),
        }
    }

    pub(crate) fn minority_count(&self) -> usize {
        self.minority_count
    }

    pub(crate) fn remaining(&self) -> impl Iterator<Item = usize> + '_ {
        self.available
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.then_some(i))
    }

    pub(crate) fn remaining_where<'s>(
        &'s self,
        pred: impl Fn(&crate::model::Worker) -> bool + 's,
    ) -> impl Iterator<Item = usize> + 's {
        self.remaining().filter(move |&i| pred(self.scenario.worker(i)))
    }

    /// Top `q` remaining workers satisfying `pred`, not yet hired.
    pub(crate) fn top(
        &self,
        pred: impl Fn(&crate::model::Worker) -> bool,
        profile: ScoreProfile,
        q: usize,
    ) -> Vec<usize> {
        let candidates: Vec<usize> = self.remaining_where(pred).collect();
        top_indices(self.scenario.workers(), candidates, profile, q)
    }

    pub(crate) fn take(&mut self, picks: &[usize]) {
        for &i in picks {
            debug_assert!(self.available[i]);
            self.available[i] = false;
            self.hired.push(i);
            self.total += 1;
            if self.scenario.worker(i).is_minority() {
                self.minority_count += 1;
            }
        }
    }

    pub(crate) fn record(&mut self, requested: usize, reserve_size: usize, reserved: &[usize], open: &[usize]) {
        let ids = |v: &[usize]| v.iter().map(|&i| self.scenario.worker(i).id.clone()).collect();
        let record = RoundRecord {
            round_index: self.rounds.len() + 1,
            requested,
            reserve_size,
            reserved_hires: ids(reserved),
            open_hires: ids(open),
            cumulative_minority_count: self.minority_count,
            cumulative_total: self.total,
        };
        self.rounds.push(record);
    }

    pub(crate) fn finish(self, partition: Option<crate::model::BrazilPartition>) -> Selection {
        Selection {
            hired: self
                .hired
                .iter()
                .map(|&i| self.scenario.worker(i).id.clone())
                .collect(),
            ledger: RoundLedger {
                rounds: self.rounds,
                partition,
            },
        }
    }
}
