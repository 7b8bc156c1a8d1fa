use crate::model::{Rule, ValidatedScenario, WorkerId};
use crate::rules::run_sequence;

use super::{compositions, PropertyError, PropertyVerdict, ViolationCode, Witness};

pub const DEFAULT_COMPOSITION_BUDGET: usize = 16;

/// Limits for the split enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitOptions {
    /// Largest total number of hires whose compositions are enumerated.
    pub budget: usize,
    /// Every round size is a multiple of this. Defaults to 2 for the
    /// gender-balanced rule and 1 otherwise.
    pub granularity: Option<usize>,
}

impl Default for SplitOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_COMPOSITION_BUDGET,
            granularity: None,
        }
    }
}

impl SplitOptions {
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_granularity(mut self, granularity: usize) -> Self {
        self.granularity = Some(granularity);
        self
    }

    fn granularity_for(&self, rule: Rule) -> usize {
        self.granularity
            .unwrap_or(if rule == Rule::Nsw { 2 } else { 1 })
            .max(1)
    }

    fn splits(&self, rule: Rule, total: usize) -> Result<Vec<Vec<usize>>, PropertyError> {
        if total > self.budget {
            return Err(PropertyError::BudgetExceeded {
                requested: total,
                budget: self.budget,
            });
        }
        let granularity = self.granularity_for(rule);
        if !total.is_multiple_of(granularity) {
            return Err(PropertyError::Granularity { total, granularity });
        }
        Ok(compositions(total, granularity))
    }
}

fn sorted(set: impl IntoIterator<Item = WorkerId>) -> Vec<WorkerId> {
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    v
}

/// Compares the hired set of every split of the scenario's total against the
/// single-round run. The witness is the first differing split in canonical
/// order.
pub fn check_aggregation_independence(
    scenario: &ValidatedScenario,
    rule: Rule,
    options: SplitOptions,
) -> Result<PropertyVerdict, PropertyError> {
    let scenario = scenario.for_rule(rule)?;
    let total = scenario.total_hires();
    let splits = options.splits(rule, total)?;
    if splits.is_empty() {
        return Ok(PropertyVerdict::Holds);
    }
    let reference = run_sequence(&scenario, &[total])?.hired_set();
    for split in splits.into_iter().skip(1) {
        let hired = run_sequence(&scenario, &split)?.hired_set();
        if hired != reference {
            let mut w = Witness::new(
                ViolationCode::AiSplit,
                format!("{} hires a different set than <{total}>", render(&split)),
            );
            w.composition = Some(split);
            w.reference = Some(vec![total]);
            w.hired = Some(sorted(hired));
            w.reference_hired = Some(sorted(reference));
            return Ok(PropertyVerdict::Violated(w));
        }
    }
    Ok(PropertyVerdict::Holds)
}

/// Searches the splits of `total` hires, in canonical order, for one under
/// which `target` is hired. `None` means no split within the enumeration
/// hires the target.
pub fn find_manipulation(
    scenario: &ValidatedScenario,
    rule: Rule,
    target: &str,
    total: usize,
    options: SplitOptions,
) -> Result<Option<Vec<usize>>, PropertyError> {
    let scenario = scenario.for_rule(rule)?;
    if scenario.index_of(target).is_none() {
        return Err(PropertyError::UnknownWorker(target.to_owned()));
    }
    for split in options.splits(rule, total)? {
        if run_sequence(&scenario, &split)?.contains(target) {
            return Ok(Some(split));
        }
    }
    Ok(None)
}

/// Re-runs both sides of a split witness; true when the hired sets still
/// differ and match the recorded ones.
pub fn replay_split_witness(
    scenario: &ValidatedScenario,
    rule: Rule,
    witness: &Witness,
) -> Result<bool, PropertyError> {
    let (Some(split), Some(reference)) = (&witness.composition, &witness.reference) else {
        return Ok(false);
    };
    let scenario = scenario.for_rule(rule)?;
    let hired = sorted(run_sequence(&scenario, split)?.hired_set());
    let reference_hired = sorted(run_sequence(&scenario, reference)?.hired_set());
    Ok(hired != reference_hired
        && witness.hired.as_ref() == Some(&hired)
        && witness.reference_hired.as_ref() == Some(&reference_hired))
}

pub(crate) fn render(split: &[usize]) -> String {
    let parts: Vec<String> = split.iter().map(usize::to_string).collect();
    format!("<{}>", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Policy, Rational, Scenario, Worker};

    fn five_workers(seq: Vec<usize>) -> ValidatedScenario {
        let workers = [(100, true), (90, true), (80, false), (50, false), (20, true)]
            .iter()
            .enumerate()
            .map(|(i, &(s, m))| Worker::new(format!("w{}", i + 1), s).minority(m))
            .collect();
        Scenario::new(workers, Policy::new(Rule::Sp, Rational::new(1, 2)), seq)
            .validate()
            .unwrap()
    }

    #[test]
    fn sm_split_witness() {
        let v = five_workers(vec![4]);
        let verdict = check_aggregation_independence(&v, Rule::Sm, SplitOptions::default()).unwrap();
        let w = verdict.witness().unwrap();
        assert_eq!(w.composition, Some(vec![2, 2]));
        assert_eq!(w.reference, Some(vec![4]));
        assert!(replay_split_witness(&v, Rule::Sm, w).unwrap());
    }

    #[test]
    fn sp_and_sa_are_split_invariant() {
        let v = five_workers(vec![4]);
        for rule in [Rule::Sp, Rule::Sa] {
            assert!(check_aggregation_independence(&v, rule, SplitOptions::default())
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn manipulation_targets() {
        let v = five_workers(vec![4]);
        let opts = SplitOptions::default();
        assert_eq!(find_manipulation(&v, Rule::Sm, "w5", 4, opts).unwrap(), Some(vec![2, 2]));
        assert_eq!(find_manipulation(&v, Rule::Sm, "w4", 4, opts).unwrap(), Some(vec![4]));
        assert_eq!(find_manipulation(&v, Rule::Sp, "w5", 4, opts).unwrap(), None);
        assert_eq!(
            find_manipulation(&v, Rule::Sp, "w9", 4, opts).unwrap_err(),
            PropertyError::UnknownWorker("w9".into())
        );
    }

    #[test]
    fn budget_is_enforced() {
        let v = five_workers(vec![4]);
        let opts = SplitOptions::default().with_budget(3);
        assert_eq!(
            check_aggregation_independence(&v, Rule::Sp, opts).unwrap_err(),
            PropertyError::BudgetExceeded { requested: 4, budget: 3 }
        );
        assert!(matches!(
            find_manipulation(&v, Rule::Sm, "w5", 4, opts),
            Err(PropertyError::BudgetExceeded { .. })
        ));
    }
}
