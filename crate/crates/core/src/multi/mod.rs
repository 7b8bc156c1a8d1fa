//! Several institutions hiring from one pool, one institution per step.
//!
//! Each institution runs an [`InstitutionalRule`] that sees only the pool,
//! the unmatched workers and its own past hires. [`apply_plural_sequence`]
//! threads a [`Matching`] through a [`PluralSequence`] and enforces the rule
//! contract at every step.

mod checks;
mod engine;
mod file;
mod institutional;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Policy, ValidationError, WorkerId};
use crate::rules::RuleError;

pub use checks::{
    check_common_top, check_multi_aggregation_independence, check_permutation_independence,
    reconstruct_ranking, DEFAULT_PERMUTATION_BUDGET, MAX_START_POOL,
};
pub use engine::{apply_plural_sequence, hired_union};
pub use file::{load_plural, parse_plural, PluralScenario};
pub use institutional::{
    single_priority_rule, InstitutionView, InstitutionalRule, PolicyRule, PriorityRule, RuleMap,
};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InstitutionId(String);

impl InstitutionId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for InstitutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for InstitutionId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

/// An institution and the single-institution policy it hires under. Without
/// a policy it hires by the plural scenario's shared ranking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Institution {
    pub id: InstitutionId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<Policy>,
}

/// One step of a plural sequence: `count` hires by `institution`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(InstitutionId, usize)", into = "(InstitutionId, usize)")]
pub struct PluralStep {
    pub institution: InstitutionId,
    pub count: usize,
}

impl PluralStep {
    pub fn new(institution: impl Into<InstitutionId>, count: usize) -> Self {
        Self {
            institution: institution.into(),
            count,
        }
    }
}

impl From<(InstitutionId, usize)> for PluralStep {
    fn from((institution, count): (InstitutionId, usize)) -> Self {
        Self { institution, count }
    }
}

impl From<PluralStep> for (InstitutionId, usize) {
    fn from(s: PluralStep) -> Self {
        (s.institution, s.count)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PluralSequence(pub Vec<PluralStep>);

impl PluralSequence {
    pub fn new(steps: impl IntoIterator<Item = PluralStep>) -> Self {
        Self(steps.into_iter().collect())
    }

    pub fn steps(&self) -> &[PluralStep] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|s| s.count).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn pairs(&self) -> Vec<(String, usize)> {
        self.0.iter().map(|s| (s.institution.to_string(), s.count)).collect()
    }
}

/// Who is matched to whom, kept consistent in both directions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    by_worker: BTreeMap<WorkerId, InstitutionId>,
    by_institution: BTreeMap<InstitutionId, Vec<WorkerId>>,
}

impl Matching {
    /// Empty matching listing every institution.
    pub fn new<'a>(institutions: impl IntoIterator<Item = &'a InstitutionId>) -> Self {
        Self {
            by_worker: BTreeMap::new(),
            by_institution: institutions.into_iter().map(|i| (i.clone(), Vec::new())).collect(),
        }
    }

    pub fn institution_of(&self, worker: &str) -> Option<&InstitutionId> {
        self.by_worker.get(worker)
    }

    pub fn is_matched(&self, worker: &str) -> bool {
        self.by_worker.contains_key(worker)
    }

    /// Hires of `institution` in hiring order.
    pub fn hires_of(&self, institution: &InstitutionId) -> &[WorkerId] {
        self.by_institution.get(institution).map_or(&[], Vec::as_slice)
    }

    pub fn matched_count(&self) -> usize {
        self.by_worker.len()
    }

    pub fn matched(&self) -> impl Iterator<Item = &WorkerId> {
        self.by_worker.keys()
    }

    pub fn assign(&mut self, worker: WorkerId, institution: InstitutionId) -> Result<(), MultiError> {
        if let Some(current) = self.by_worker.get(&worker) {
            return Err(MultiError::ContractViolation {
                institution,
                reason: format!("{worker} is already matched to {current}"),
            });
        }
        self.by_institution
            .entry(institution.clone())
            .or_default()
            .push(worker.clone());
        self.by_worker.insert(worker, institution);
        Ok(())
    }

    /// Every worker entry agrees with the per-institution lists.
    pub fn is_consistent(&self) -> bool {
        let listed: usize = self.by_institution.values().map(Vec::len).sum();
        listed == self.by_worker.len()
            && self.by_institution.iter().all(|(i, ws)| {
                ws.iter().all(|w| self.by_worker.get(w) == Some(i))
            })
    }
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.by_institution.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MultiError {
    #[error("rule of {institution} broke its contract: {reason}")]
    ContractViolation {
        institution: InstitutionId,
        reason: String,
    },
    #[error("no rule for institution {0}")]
    UnknownInstitution(InstitutionId),
    #[error("duplicate institution {0}")]
    DuplicateInstitution(InstitutionId),
    #[error("institution {0} has no policy and no shared ranking is given")]
    MissingRule(InstitutionId),
    #[error("ranking is not a strict order over the pool: {0}")]
    InvalidRanking(String),
    #[error("{requested} exceeds the enumeration budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}
