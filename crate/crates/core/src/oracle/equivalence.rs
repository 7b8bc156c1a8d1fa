use std::collections::BTreeSet;

use serde::Serialize;

use crate::format::scenario_digest;
use crate::model::{Rule, Scenario, WorkerId};
use crate::properties::{check_minority_fair, check_minority_rights, Horizon, Witness};
use crate::rules::run_sequence;

use super::{generate_instance, unique_in, CorpusSpec, OracleError, Pool, MAX_ORACLE_POOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialVerdict {
    Match,
    Mismatch,
}

/// Whether every prefix target `m × Q_r` of a trial is an integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Exact,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub seed: u64,
    pub trial: usize,
    pub digest: String,
    pub verdict: TrialVerdict,
    pub semantics: Semantics,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prefix: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Vec<WorkerId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<Vec<WorkerId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub rule: Rule,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub records: Vec<TrialRecord>,
}

impl EquivalenceReport {
    pub fn first_failure(&self) -> Option<&TrialRecord> {
        self.records.iter().find(|r| r.verdict == TrialVerdict::Mismatch)
    }

    /// One JSON object per trial, newline terminated.
    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

fn prepare(rule: Rule, mut scenario: Scenario) -> Scenario {
    scenario.policy.rule = rule;
    if rule == Rule::Brazil {
        scenario.policy.k = Some(scenario.sequence.iter().sum());
    }
    scenario
}

/// Runs `rule` on every corpus trial and compares the hired set after each
/// round with the oracle's unique set of that size.
///
/// A mismatch record carries the first disagreeing prefix, both sets, and a
/// witness from the minority-fairness checker (or the rights checker when
/// fairness holds).
pub fn oracle_equivalence(rule: Rule, corpus: &CorpusSpec) -> Result<EquivalenceReport, OracleError> {
    if matches!(rule, Rule::Nsw | Rule::FrenchP1 | Rule::FrenchP2) {
        return Err(OracleError::UnsupportedRule(rule));
    }
    if corpus.max_workers > MAX_ORACLE_POOL {
        return Err(OracleError::PoolTooLarge {
            size: corpus.max_workers,
            max: MAX_ORACLE_POOL,
        });
    }
    let mut records = Vec::with_capacity(corpus.trials);
    for trial in 0..corpus.trials {
        let scenario = prepare(rule, generate_instance(corpus, trial));
        let digest = scenario_digest(&scenario);
        let validated = scenario.validate().expect("corpus instances are valid");
        let selection = run_sequence(&validated, validated.sequence()).expect("corpus runs");
        let pool = Pool::new(validated.workers(), validated.m(), MAX_ORACLE_POOL)?;

        let mut semantics = Semantics::Exact;
        let mut cumulative = 0usize;
        let mut mismatch = None;
        for (r, &q) in validated.sequence().iter().enumerate() {
            cumulative += q;
            if !(validated.m() * crate::model::Rational::from_integer(cumulative as i64)).is_integer() {
                semantics = Semantics::Extension;
            }
            if mismatch.is_some() {
                continue;
            }
            let expected = unique_in(&pool, cumulative)?.set;
            let actual: BTreeSet<WorkerId> = selection.prefix(r + 1);
            if expected != actual {
                mismatch = Some((r + 1, expected, actual));
            }
        }

        let record = match mismatch {
            None => TrialRecord {
                seed: corpus.seed,
                trial,
                digest,
                verdict: TrialVerdict::Match,
                semantics,
                prefix: None,
                expected: None,
                actual: None,
                witness: None,
            },
            Some((prefix, expected, actual)) => {
                let fair = check_minority_fair(&validated, &selection, Horizon::EveryPrefix);
                let witness = fair
                    .witness()
                    .or(check_minority_rights(&validated, &selection, Horizon::EveryPrefix).witness())
                    .cloned();
                TrialRecord {
                    seed: corpus.seed,
                    trial,
                    digest,
                    verdict: TrialVerdict::Mismatch,
                    semantics,
                    prefix: Some(prefix),
                    expected: Some(expected.into_iter().collect()),
                    actual: Some(actual.into_iter().collect()),
                    witness,
                }
            }
        };
        records.push(record);
    }
    let passed = records.iter().filter(|r| r.verdict == TrialVerdict::Match).count();
    Ok(EquivalenceReport {
        rule,
        seed: corpus.seed,
        trials: corpus.trials,
        passed,
        failed: records.len() - passed,
        records,
    })
}
