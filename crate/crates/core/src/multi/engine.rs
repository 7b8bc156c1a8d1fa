use std::collections::{BTreeSet, HashSet};

use crate::model::{ValidationError, Worker, WorkerId};

use super::{InstitutionView, Matching, MultiError, PluralSequence, RuleMap};

pub(crate) fn check_pool(pool: &[Worker]) -> Result<(), MultiError> {
    let mut seen = HashSet::new();
    for w in pool {
        if !seen.insert(&w.id) {
            return Err(ValidationError::DuplicateId(w.id.clone()).into());
        }
    }
    Ok(())
}

/// Runs the plural sequence step by step and returns the matching after each
/// step. Starts from `seed` if given, otherwise from the empty matching.
///
/// Every step also asks the other institutions' rules to serve the same
/// request and fails with [`MultiError::ContractViolation`] if any of them
/// hires, or if the hiring rule returns a matched, duplicate or surplus
/// worker.
pub fn apply_plural_sequence(
    pool: &[Worker],
    rules: &RuleMap,
    sequence: &PluralSequence,
    seed: Option<&Matching>,
) -> Result<Vec<Matching>, MultiError> {
    check_pool(pool)?;
    let mut matching = seed.cloned().unwrap_or_else(|| Matching::new(rules.keys()));
    let mut history = Vec::with_capacity(sequence.len());
    for step in sequence.steps() {
        let (institution, rule) = rules
            .get_key_value(&step.institution)
            .ok_or_else(|| MultiError::UnknownInstitution(step.institution.clone()))?;
        let hires = rule.hire(&InstitutionView::new(pool, institution, &matching), step)?;

        let violation = |reason: String| MultiError::ContractViolation {
            institution: institution.clone(),
            reason,
        };
        if hires.len() > step.count {
            return Err(violation(format!("hired {} workers for a request of {}", hires.len(), step.count)));
        }
        let mut fresh = HashSet::new();
        for id in &hires {
            if !pool.iter().any(|w| &w.id == id) {
                return Err(violation(format!("{id} is not in the pool")));
            }
            if matching.is_matched(id.as_str()) || !fresh.insert(id) {
                return Err(violation(format!("{id} is not available")));
            }
        }
        for (other, other_rule) in rules.iter().filter(|(i, _)| *i != institution) {
            let view = InstitutionView::new(pool, other, &matching);
            if !other_rule.hire(&view, step)?.is_empty() {
                return Err(MultiError::ContractViolation {
                    institution: other.clone(),
                    reason: format!("hired for {}", step.institution),
                });
            }
        }

        for id in hires {
            matching.assign(id, institution.clone())?;
        }
        debug_assert!(matching.is_consistent());
        history.push(matching.clone());
    }
    Ok(history)
}

/// Workers matched to any institution in the final matching.
pub fn hired_union(history: &[Matching]) -> BTreeSet<WorkerId> {
    history
        .last()
        .map(|m| m.matched().cloned().collect())
        .unwrap_or_default()
}
