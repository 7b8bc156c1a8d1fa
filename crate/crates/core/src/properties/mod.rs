//! Decision procedures for the properties hiring rules are judged by, and
//! the manipulation search over round splits.
//!
//! Every check returns a [`PropertyVerdict`]; a violation always carries a
//! concrete [`Witness`] that can be replayed. Ratio comparisons are exact.
//!
//! When `m × |H|` is fractional, the minority-fair ratio clause bounds the
//! minority count by `⌈m × |H|⌉` instead of `m × |H|`. The two agree whenever
//! `m × |H|` is an integer.

mod compositions;
mod sets;
mod split;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::model::{ValidatedScenario, ValidationError, WorkerId};
use crate::rules::RuleError;

pub use compositions::compositions;
pub use sets::{
    check_fairness, check_minority_fair, check_minority_rights, fairness_violation,
    minority_fair_violation, minority_rights_violation, replay_selection_witness,
};
pub use split::{
    check_aggregation_independence, find_manipulation, replay_split_witness, SplitOptions,
    DEFAULT_COMPOSITION_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationCode {
    #[serde(rename = "FAIR_PAIR")]
    FairPair,
    #[serde(rename = "MR_RATIO")]
    MrRatio,
    #[serde(rename = "MF_CLAUSE_I")]
    MfClauseI,
    #[serde(rename = "MF_CLAUSE_II")]
    MfClauseII,
    #[serde(rename = "MF_CLAUSE_III")]
    MfClauseIII,
    #[serde(rename = "AI_SPLIT")]
    AiSplit,
    #[serde(rename = "PI_ORDER")]
    PiOrder,
    #[serde(rename = "CT_DISJOINT")]
    CtDisjoint,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("code serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

/// A concrete counterexample. Which optional fields are set depends on the
/// code: pair violations name two workers, split violations name the
/// composition and both hired sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub code: Option<ViolationCode>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub workers: Vec<WorkerId>,
    /// Number of rounds in the checked prefix.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<(String, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_steps: Option<Vec<(String, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hired: Option<Vec<WorkerId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_hired: Option<Vec<WorkerId>>,
    pub detail: String,
}

impl Witness {
    pub fn new(code: ViolationCode, detail: impl Into<String>) -> Self {
        Self {
            code: Some(code),
            detail: detail.into(),
            ..Self::default()
        }
    }

    pub fn code(&self) -> ViolationCode {
        self.code.expect("witness carries a code")
    }

    pub fn with_workers(mut self, workers: impl IntoIterator<Item = WorkerId>) -> Self {
        self.workers = workers.into_iter().collect();
        self
    }

    pub fn at_prefix(mut self, rounds: usize) -> Self {
        self.prefix = Some(rounds);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum PropertyVerdict {
    Holds,
    Violated(Witness),
}

impl PropertyVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PropertyVerdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            PropertyVerdict::Holds => None,
            PropertyVerdict::Violated(w) => Some(w),
        }
    }

    pub(crate) fn from_witness(w: Option<Witness>) -> Self {
        w.map_or(PropertyVerdict::Holds, PropertyVerdict::Violated)
    }
}

impl Serialize for PropertyVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            holds: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            witness: Option<&'a Witness>,
        }
        Repr {
            holds: self.holds(),
            witness: self.witness(),
        }
        .serialize(s)
    }
}

/// Which round prefixes the minority checks look at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Horizon {
    /// After every round (the dynamic properties).
    #[default]
    #[serde(rename = "EVERY_PREFIX")]
    EveryPrefix,
    /// After the first round only (the static properties).
    #[serde(rename = "FIRST_ROUND_ONLY")]
    FirstRoundOnly,
}

impl FromStr for Horizon {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "every-prefix" | "dynamic" => Ok(Horizon::EveryPrefix),
            "first-round-only" | "first-round" | "static" => Ok(Horizon::FirstRoundOnly),
            _ => Err(format!("unknown horizon `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error("{requested} exceeds the enumeration budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("unknown worker `{0}`")]
    UnknownWorker(String),
    #[error("total {total} is not a multiple of the round granularity {granularity}")]
    Granularity { total: usize, granularity: usize },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// Hired mask of a prefix: prior hires plus the first `rounds` rounds.
pub(crate) fn prefix_mask(
    scenario: &ValidatedScenario,
    selection: &crate::model::Selection,
    rounds: usize,
) -> Vec<bool> {
    let mut mask: Vec<bool> = (0..scenario.workers().len())
        .map(|i| scenario.is_prior(i))
        .collect();
    for id in selection.ledger.rounds.iter().take(rounds).flat_map(|r| r.hires()) {
        if let Some(i) = scenario.index_of(id.as_str()) {
            mask[i] = true;
        }
    }
    mask
}

pub(crate) fn horizon_prefixes(horizon: Horizon, rounds: usize) -> std::ops::RangeInclusive<usize> {
    match horizon {
        Horizon::EveryPrefix => 1..=rounds,
        Horizon::FirstRoundOnly => 1..=rounds.min(1),
    }
}
