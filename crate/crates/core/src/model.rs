//! Domain types shared by every rule: workers, policies, scenarios, the
//! per-round ledger and the score-selection primitive.

use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational used for scores and ratios.
pub type Rational = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WorkerId(String);

impl WorkerId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for WorkerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for WorkerId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for WorkerId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl Borrow<str> for WorkerId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gender {
    F,
    M,
}

/// Which score a selection ranks by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreProfile {
    /// Main competition score.
    Main,
    /// Open competition score (French open pool).
    Open,
    /// Disability competition score (French reserved pool).
    Disability,
}

impl fmt::Display for ScoreProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScoreProfile::Main => "main",
            ScoreProfile::Open => "open",
            ScoreProfile::Disability => "disability",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Worker {
    pub id: WorkerId,
    pub score: Option<Rational>,
    pub minority: bool,
    pub gender: Option<Gender>,
    pub open_score: Option<Rational>,
    pub disability_score: Option<Rational>,
    pub in_open_pool: bool,
    pub in_disability_pool: bool,
}

impl Worker {
    /// A worker with a main score and no other attributes.
    pub fn new(id: impl Into<String>, score: i64) -> Self {
        Self {
            id: WorkerId::new(id),
            score: Some(Rational::from_integer(score)),
            minority: false,
            gender: None,
            open_score: None,
            disability_score: None,
            in_open_pool: false,
            in_disability_pool: false,
        }
    }

    pub fn minority(mut self, minority: bool) -> Self {
        self.minority = minority;
        self
    }

    pub fn with_gender(mut self, gender: Gender) -> Self {
        self.gender = Some(gender);
        self
    }

    pub fn score_for(&self, profile: ScoreProfile) -> Option<Rational> {
        match profile {
            ScoreProfile::Main => self.score,
            ScoreProfile::Open => self.open_score,
            ScoreProfile::Disability => self.disability_score,
        }
    }

    /// Membership in the protected group. Applicants to the disability
    /// competition count as members whether or not the flag is set.
    pub fn is_minority(&self) -> bool {
        self.minority || self.in_disability_pool
    }

    /// Score used by the property auditors: the main score, else the open
    /// score, else the disability score.
    pub fn merit(&self) -> Option<Rational> {
        self.score.or(self.open_score).or(self.disability_score)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "SP")]
    Sp,
    #[serde(rename = "SM")]
    Sm,
    #[serde(rename = "SA")]
    Sa,
    #[serde(rename = "BRAZIL")]
    Brazil,
    #[serde(rename = "FRENCH_P1")]
    FrenchP1,
    #[serde(rename = "FRENCH_P2")]
    FrenchP2,
    #[serde(rename = "NSW")]
    Nsw,
}

impl Rule {
    pub const ALL: [Rule; 7] = [
        Rule::Sp,
        Rule::Sm,
        Rule::Sa,
        Rule::Brazil,
        Rule::FrenchP1,
        Rule::FrenchP2,
        Rule::Nsw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Sp => "SP",
            Rule::Sm => "SM",
            Rule::Sa => "SA",
            Rule::Brazil => "BRAZIL",
            Rule::FrenchP1 => "FRENCH_P1",
            Rule::FrenchP2 => "FRENCH_P2",
            Rule::Nsw => "NSW",
        }
    }

    pub fn is_french(self) -> bool {
        matches!(self, Rule::FrenchP1 | Rule::FrenchP2)
    }

    /// Labels for the two phases of a round, as they appear in ledgers.
    pub fn phase_labels(self) -> (&'static str, &'static str) {
        match self {
            Rule::Sp | Rule::Sm | Rule::Sa => ("reserve", "open"),
            Rule::Brazil => ("top_minority", "others"),
            Rule::FrenchP1 | Rule::FrenchP2 => ("disability", "open"),
            Rule::Nsw => ("female", "male"),
        }
    }

    /// Whether a round of `q` hires is admissible under this rule.
    pub fn admits_round(self, q: usize) -> bool {
        q > 0 && (self != Rule::Nsw || q.is_multiple_of(2))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        match norm.as_str() {
            "SP" => Ok(Rule::Sp),
            "SM" => Ok(Rule::Sm),
            "SA" => Ok(Rule::Sa),
            "BRAZIL" | "B" => Ok(Rule::Brazil),
            "FRENCH_P1" | "F1" => Ok(Rule::FrenchP1),
            "FRENCH_P2" | "F2" => Ok(Rule::FrenchP2),
            "NSW" => Ok(Rule::Nsw),
            _ => Err(format!("unknown rule `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Policy {
    pub rule: Rule,
    /// Minority ratio in [0, 1].
    pub m: Rational,
    /// Brazilian pre-partition size.
    pub k: Option<usize>,
}

impl Policy {
    pub fn new(rule: Rule, m: Rational) -> Self {
        Self { rule, m, k: None }
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub workers: Vec<Worker>,
    pub policy: Policy,
    pub sequence: Vec<usize>,
    pub prior_hires: Vec<WorkerId>,
    /// Candidate sub-pools for the score-transformation search. Empty means
    /// the whole pool only.
    pub subpools: Vec<Vec<WorkerId>>,
}

impl Scenario {
    pub fn new(workers: Vec<Worker>, policy: Policy, sequence: Vec<usize>) -> Self {
        Self {
            workers,
            policy,
            sequence,
            prior_hires: Vec::new(),
            subpools: Vec::new(),
        }
    }

    pub fn with_prior_hires(mut self, prior: impl IntoIterator<Item = WorkerId>) -> Self {
        self.prior_hires = prior.into_iter().collect();
        self
    }

    pub fn validate(self) -> Result<ValidatedScenario, ValidationError> {
        ValidatedScenario::new(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("duplicate worker id `{0}`")]
    DuplicateId(WorkerId),
    #[error("workers {ids:?} share a {profile} score")]
    DuplicateScore {
        profile: ScoreProfile,
        ids: Vec<WorkerId>,
    },
    #[error("rule {rule} requires field `{field}`{}", worker.as_ref().map(|w| format!(" on worker `{w}`")).unwrap_or_default())]
    MissingField {
        rule: Rule,
        field: &'static str,
        worker: Option<WorkerId>,
    },
    #[error("round {0} requests an odd number of hires under the NSW rule")]
    OddNswRound(usize),
    #[error("round {0} requests zero hires")]
    ZeroRound(usize),
    #[error("prior hire `{0}` is not in the pool")]
    UnknownPriorHire(WorkerId),
    #[error("minority ratio {0} outside [0, 1]")]
    RatioOutOfRange(Rational),
    #[error("k = {k} is below the {total} planned hires")]
    KTooSmall { k: usize, total: usize },
    #[error("k = {k} exceeds the pool of {pool} workers")]
    KExceedsPool { k: usize, pool: usize },
}

/// A scenario that passed every standing assumption for its rule.
#[derive(Clone, Debug)]
pub struct ValidatedScenario {
    scenario: Scenario,
    index: HashMap<WorkerId, usize>,
    prior: Vec<bool>,
    sufficient: bool,
}

impl ValidatedScenario {
    pub fn new(scenario: Scenario) -> Result<Self, ValidationError> {
        let mut index = HashMap::with_capacity(scenario.workers.len());
        for (i, w) in scenario.workers.iter().enumerate() {
            if index.insert(w.id.clone(), i).is_some() {
                return Err(ValidationError::DuplicateId(w.id.clone()));
            }
        }

        let m = scenario.policy.m;
        if m < Rational::zero() || m > Rational::one() {
            return Err(ValidationError::RatioOutOfRange(m));
        }

        let rule = scenario.policy.rule;
        for (r, &q) in scenario.sequence.iter().enumerate() {
            if q == 0 {
                return Err(ValidationError::ZeroRound(r + 1));
            }
            if rule == Rule::Nsw && q % 2 == 1 {
                return Err(ValidationError::OddNswRound(r + 1));
            }
        }

        let mut prior = vec![false; scenario.workers.len()];
        for id in &scenario.prior_hires {
            match index.get(id) {
                Some(&i) if prior[i] => return Err(ValidationError::DuplicateId(id.clone())),
                Some(&i) => prior[i] = true,
                None => return Err(ValidationError::UnknownPriorHire(id.clone())),
            }
        }
        for pool in &scenario.subpools {
            for id in pool {
                if !index.contains_key(id) {
                    return Err(ValidationError::UnknownPriorHire(id.clone()));
                }
            }
        }

        check_required_fields(&scenario)?;
        for profile in consumed_profiles(rule) {
            check_distinct_scores(&scenario, *profile)?;
        }

        let total: usize = scenario.sequence.iter().sum();
        if rule == Rule::Brazil {
            let k = scenario.policy.k.ok_or(ValidationError::MissingField {
                rule,
                field: "k",
                worker: None,
            })?;
            if k > scenario.workers.len() {
                return Err(ValidationError::KExceedsPool {
                    k,
                    pool: scenario.workers.len(),
                });
            }
            if k < total {
                return Err(ValidationError::KTooSmall { k, total });
            }
        }

        let available = prior.iter().filter(|p| !**p).count();
        Ok(Self {
            sufficient: total <= available,
            scenario,
            index,
            prior,
        })
    }

    /// Re-validates the same data under another rule.
    pub fn for_rule(&self, rule: Rule) -> Result<Self, ValidationError> {
        if rule == self.scenario.policy.rule {
            return Ok(self.clone());
        }
        let mut scenario = self.scenario.clone();
        scenario.policy.rule = rule;
        Self::new(scenario)
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn into_scenario(self) -> Scenario {
        self.scenario
    }

    pub fn workers(&self) -> &[Worker] {
        &self.scenario.workers
    }

    pub fn worker(&self, idx: usize) -> &Worker {
        &self.scenario.workers[idx]
    }

    pub fn policy(&self) -> &Policy {
        &self.scenario.policy
    }

    pub fn rule(&self) -> Rule {
        self.scenario.policy.rule
    }

    pub fn m(&self) -> Rational {
        self.scenario.policy.m
    }

    pub fn sequence(&self) -> &[usize] {
        &self.scenario.sequence
    }

    pub fn total_hires(&self) -> usize {
        self.scenario.sequence.iter().sum()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn is_prior(&self, idx: usize) -> bool {
        self.prior[idx]
    }

    pub fn prior_count(&self) -> usize {
        self.scenario.prior_hires.len()
    }

    /// Whether the pool outside the prior hires covers every planned hire.
    pub fn is_sufficient(&self) -> bool {
        self.sufficient
    }

    pub fn minority_count(&self) -> usize {
        self.workers().iter().filter(|w| w.is_minority()).count()
    }
}

fn consumed_profiles(rule: Rule) -> &'static [ScoreProfile] {
    if rule.is_french() {
        &[ScoreProfile::Open, ScoreProfile::Disability]
    } else {
        &[ScoreProfile::Main]
    }
}

fn check_required_fields(scenario: &Scenario) -> Result<(), ValidationError> {
    let rule = scenario.policy.rule;
    let missing = |field, w: &Worker| ValidationError::MissingField {
        rule,
        field,
        worker: Some(w.id.clone()),
    };
    for w in &scenario.workers {
        if rule.is_french() {
            if w.in_open_pool && w.open_score.is_none() {
                return Err(missing("open_score", w));
            }
            if w.in_disability_pool && w.disability_score.is_none() {
                return Err(missing("disability_score", w));
            }
        } else if w.score.is_none() {
            return Err(missing("score", w));
        }
        if rule == Rule::Nsw && w.gender.is_none() {
            return Err(missing("gender", w));
        }
    }
    Ok(())
}

fn check_distinct_scores(
    scenario: &Scenario,
    profile: ScoreProfile,
) -> Result<(), ValidationError> {
    let mut seen: BTreeMap<Rational, Vec<WorkerId>> = BTreeMap::new();
    for w in &scenario.workers {
        let member = match profile {
            ScoreProfile::Main => true,
            ScoreProfile::Open => w.in_open_pool,
            ScoreProfile::Disability => w.in_disability_pool,
        };
        if !member {
            continue;
        }
        if let Some(s) = w.score_for(profile) {
            seen.entry(s).or_default().push(w.id.clone());
        }
    }
    match seen.into_values().find(|ids| ids.len() > 1) {
        Some(ids) => Err(ValidationError::DuplicateScore { profile, ids }),
        None => Ok(()),
    }
}

/// Descending score order; ties fall back to id so the order stays total.
pub(crate) fn score_order(a: &Worker, b: &Worker, profile: ScoreProfile) -> Ordering {
    b.score_for(profile)
        .cmp(&a.score_for(profile))
        .then_with(|| a.id.cmp(&b.id))
}

/// The `q` highest scoring workers of `pool` under `profile`, best first.
/// Workers without a score in that profile are never selected.
pub fn top_q<'a, I>(pool: I, profile: ScoreProfile, q: usize) -> Vec<&'a Worker>
where
    I: IntoIterator<Item = &'a Worker>,
{
    let mut ranked: Vec<&Worker> = pool
        .into_iter()
        .filter(|w| w.score_for(profile).is_some())
        .collect();
    ranked.sort_by(|a, b| score_order(a, b, profile));
    ranked.truncate(q);
    ranked
}

/// Index-based variant of [`top_q`] used by the engines.
pub(crate) fn top_indices(
    workers: &[Worker],
    candidates: impl IntoIterator<Item = usize>,
    profile: ScoreProfile,
    q: usize,
) -> Vec<usize> {
    let mut ranked: Vec<usize> = candidates
        .into_iter()
        .filter(|&i| workers[i].score_for(profile).is_some())
        .collect();
    ranked.sort_by(|&a, &b| score_order(&workers[a], &workers[b], profile));
    ranked.truncate(q);
    ranked
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round_index: usize,
    pub requested: usize,
    /// The reserved quota this round, before capping by available workers.
    pub reserve_size: usize,
    pub reserved_hires: Vec<WorkerId>,
    pub open_hires: Vec<WorkerId>,
    /// Minority hires so far, prior hires included.
    pub cumulative_minority_count: usize,
    /// Hires so far, prior hires included.
    pub cumulative_total: usize,
}

impl RoundRecord {
    pub fn hires(&self) -> impl Iterator<Item = &WorkerId> {
        self.reserved_hires.iter().chain(&self.open_hires)
    }

    pub fn hire_count(&self) -> usize {
        self.reserved_hires.len() + self.open_hires.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrazilPartition {
    pub tm: Vec<WorkerId>,
    pub o: Vec<WorkerId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RoundLedger {
    pub rounds: Vec<RoundRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<BrazilPartition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Selection {
    /// New hires in hiring order; prior hires are excluded.
    pub hired: Vec<WorkerId>,
    pub ledger: RoundLedger,
}

impl Selection {
    pub fn hired_set(&self) -> BTreeSet<WorkerId> {
        self.hired.iter().cloned().collect()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.hired.iter().any(|w| w.as_str() == id)
    }

    /// New hires made in the first `rounds` rounds.
    pub fn prefix(&self, rounds: usize) -> BTreeSet<WorkerId> {
        self.ledger
            .rounds
            .iter()
            .take(rounds)
            .flat_map(|r| r.hires().cloned())
            .collect()
    }

    pub fn round_count(&self) -> usize {
        self.ledger.rounds.len()
    }
}

/// Builds a set of worker ids from string literals.
pub fn ids<'a>(names: impl IntoIterator<Item = &'a str>) -> BTreeSet<WorkerId> {
    names.into_iter().map(WorkerId::from).collect()
}
