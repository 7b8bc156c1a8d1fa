use std::collections::BTreeSet;

use itertools::Itertools;

use crate::model::{Worker, WorkerId};
use crate::properties::{compositions, PropertyVerdict, ViolationCode, Witness};

use super::engine::check_pool;
use super::{
    apply_plural_sequence, hired_union, InstitutionId, InstitutionView, Matching, MultiError,
    PluralSequence, PluralStep, RuleMap,
};

pub const DEFAULT_PERMUTATION_BUDGET: usize = 8;

/// Largest pool whose start matchings are enumerated exhaustively.
pub const MAX_START_POOL: usize = 10;

fn sorted(set: BTreeSet<WorkerId>) -> Vec<WorkerId> {
    set.into_iter().collect()
}

/// Runs every reordering of the plural sequence and compares the hired
/// unions with the one of the sequence as given.
pub fn check_permutation_independence(
    pool: &[Worker],
    rules: &RuleMap,
    sequence: &PluralSequence,
    budget: usize,
) -> Result<PropertyVerdict, MultiError> {
    if sequence.len() > budget {
        return Err(MultiError::BudgetExceeded {
            requested: sequence.len(),
            budget,
        });
    }
    let reference = hired_union(&apply_plural_sequence(pool, rules, sequence, None)?);
    for order in (0..sequence.len()).permutations(sequence.len()).skip(1) {
        let permuted = PluralSequence::new(order.iter().map(|&k| sequence.steps()[k].clone()));
        let union = hired_union(&apply_plural_sequence(pool, rules, &permuted, None)?);
        if union != reference {
            let mut w = Witness::new(
                ViolationCode::PiOrder,
                "reordering the steps changes the hired workers",
            );
            w.steps = Some(permuted.pairs());
            w.reference_steps = Some(sequence.pairs());
            w.hired = Some(sorted(union));
            w.reference_hired = Some(sorted(reference));
            return Ok(PropertyVerdict::Violated(w));
        }
    }
    Ok(PropertyVerdict::Holds)
}

/// Asks every institution for a single hire from the full pool; the rules
/// have a common top when they all pick the same worker.
pub fn check_common_top(pool: &[Worker], rules: &RuleMap) -> Result<PropertyVerdict, MultiError> {
    check_pool(pool)?;
    if pool.is_empty() {
        return Ok(PropertyVerdict::Holds);
    }
    let empty = Matching::new(rules.keys());
    let mut picks = Vec::with_capacity(rules.len());
    for (institution, rule) in rules {
        let view = InstitutionView::new(pool, institution, &empty);
        let hired = rule.hire(&view, &PluralStep::new(institution.clone(), 1))?;
        picks.push((institution, hired.into_iter().next()));
    }
    let first = picks.first().and_then(|(_, p)| p.clone());
    if first.is_some() && picks.iter().all(|(_, p)| *p == first) {
        return Ok(PropertyVerdict::Holds);
    }
    let detail = picks
        .iter()
        .map(|(i, p)| match p {
            Some(w) => format!("{i} picks {w}"),
            None => format!("{i} picks nobody"),
        })
        .join(", ");
    let mut w = Witness::new(ViolationCode::CtDisjoint, detail)
        .with_workers(picks.iter().filter_map(|(_, p)| p.clone()).unique());
    w.steps = Some(picks.iter().map(|(i, _)| (i.to_string(), 1)).collect());
    Ok(PropertyVerdict::Violated(w))
}

/// Start matchings in enumeration order: each worker unmatched, hired by
/// `institution`, or hired elsewhere. The empty matching comes first.
fn start_matchings(pool: &[Worker], rules: &RuleMap, institution: &InstitutionId) -> Vec<Matching> {
    let other = rules.keys().find(|i| *i != institution).cloned();
    let base = if other.is_some() { 3usize } else { 2 };
    let count = base.pow(pool.len() as u32);
    (0..count)
        .map(|mut code| {
            let mut m = Matching::new(rules.keys());
            for w in pool {
                match code % base {
                    1 => m.assign(w.id.clone(), institution.clone()).expect("fresh worker"),
                    2 => m
                        .assign(w.id.clone(), other.clone().expect("third state needs another institution"))
                        .expect("fresh worker"),
                    _ => {}
                }
                code /= base;
            }
            m
        })
        .collect()
}

/// Compares hiring `q` workers in one step against every two-step split,
/// from every start matching that leaves at least `q` workers unmatched.
pub fn check_multi_aggregation_independence(
    pool: &[Worker],
    rules: &RuleMap,
    institution: &InstitutionId,
    q: usize,
    budget: usize,
) -> Result<PropertyVerdict, MultiError> {
    check_pool(pool)?;
    let rule = rules
        .get(institution)
        .ok_or_else(|| MultiError::UnknownInstitution(institution.clone()))?;
    if q > budget {
        return Err(MultiError::BudgetExceeded { requested: q, budget });
    }
    if pool.len() > MAX_START_POOL {
        return Err(MultiError::BudgetExceeded {
            requested: pool.len(),
            budget: MAX_START_POOL,
        });
    }
    let splits: Vec<Vec<usize>> = compositions(q, rule.granularity())
        .into_iter()
        .filter(|c| c.len() == 2)
        .collect();
    if splits.is_empty() {
        return Ok(PropertyVerdict::Holds);
    }
    let new_hires = |history: &[Matching], start: &Matching| -> BTreeSet<WorkerId> {
        history
            .last()
            .map(|m| m.hires_of(institution).iter().skip(start.hires_of(institution).len()).cloned().collect())
            .unwrap_or_default()
    };
    for start in start_matchings(pool, rules, institution) {
        if pool.len() - start.matched_count() < q {
            continue;
        }
        let whole = PluralSequence::new([PluralStep::new(institution.clone(), q)]);
        let reference = new_hires(&apply_plural_sequence(pool, rules, &whole, Some(&start))?, &start);
        for split in &splits {
            let seq = PluralSequence::new(split.iter().map(|&c| PluralStep::new(institution.clone(), c)));
            let hired = new_hires(&apply_plural_sequence(pool, rules, &seq, Some(&start))?, &start);
            if hired != reference {
                let own = start.hires_of(institution).iter().join(",");
                let others = start
                    .matched()
                    .filter(|w| start.institution_of(w.as_str()) != Some(institution))
                    .join(",");
                let mut w = Witness::new(
                    ViolationCode::AiSplit,
                    format!("{institution} from own hires {{{own}}} and others' hires {{{others}}}"),
                );
                w.composition = Some(split.clone());
                w.reference = Some(vec![q]);
                w.steps = Some(seq.pairs());
                w.reference_steps = Some(whole.pairs());
                w.hired = Some(sorted(hired));
                w.reference_hired = Some(sorted(reference));
                return Ok(PropertyVerdict::Violated(w));
            }
        }
    }
    Ok(PropertyVerdict::Holds)
}

/// Derives a ranking from one institution's behavior by letting it hire one
/// worker at a time until the pool is exhausted.
pub fn reconstruct_ranking(
    pool: &[Worker],
    rules: &RuleMap,
    institution: &InstitutionId,
) -> Result<Vec<WorkerId>, MultiError> {
    let mut matching = Matching::new(rules.keys());
    let single = PluralSequence::new([PluralStep::new(institution.clone(), 1)]);
    while matching.matched_count() < pool.len() {
        let next = apply_plural_sequence(pool, rules, &single, Some(&matching))?
            .pop()
            .expect("one step");
        if next.matched_count() == matching.matched_count() {
            return Err(MultiError::InvalidRanking(format!(
                "{institution} stopped hiring with {} workers left",
                pool.len() - matching.matched_count()
            )));
        }
        matching = next;
    }
    Ok(matching.hires_of(institution).to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Policy, Rational, Rule};
    use crate::multi::{single_priority_rule, PolicyRule};

    fn pool(minorities: &[usize]) -> Vec<Worker> {
        [100, 90, 80, 50, 20]
            .iter()
            .enumerate()
            .map(|(i, &s)| Worker::new(format!("w{}", i + 1), s).minority(minorities.contains(&(i + 1))))
            .collect()
    }

    fn policies(entries: &[(&str, Rule, Rational)]) -> RuleMap {
        entries
            .iter()
            .map(|&(i, rule, m)| {
                (InstitutionId::from(i), Box::new(PolicyRule::new(Policy::new(rule, m))) as _)
            })
            .collect()
    }

    #[test]
    fn reserve_rules_fail_permutation_independence() {
        let pool = pool(&[1, 2, 5]);
        let rules = policies(&[
            ("i1", Rule::Sa, Rational::new(1, 2)),
            ("i2", Rule::Sa, Rational::from_integer(0)),
        ]);
        let seq = PluralSequence::new([PluralStep::new("i1", 2), PluralStep::new("i2", 2)]);
        let verdict = check_permutation_independence(&pool, &rules, &seq, 8).unwrap();
        let w = verdict.witness().unwrap();
        assert!(w.hired.as_ref().unwrap().contains(&"w5".into()));
        assert!(w.reference_hired.as_ref().unwrap().contains(&"w4".into()));
    }

    #[test]
    fn common_top_split() {
        let pool = pool(&[2, 5]);
        let rules = policies(&[
            ("i1", Rule::Sa, Rational::from_integer(1)),
            ("i2", Rule::Sa, Rational::from_integer(0)),
        ]);
        let verdict = check_common_top(&pool, &rules).unwrap();
        assert_eq!(verdict.witness().unwrap().workers, ["w2", "w1"].map(WorkerId::from));
        let ranking = pool.iter().rev().map(|w| w.id.clone()).collect();
        let ids = [InstitutionId::from("a"), InstitutionId::from("b")];
        assert!(check_common_top(&pool, &single_priority_rule(&pool, ranking, &ids).unwrap())
            .unwrap()
            .holds());
    }

    #[test]
    fn sm_institution_split_witness() {
        let pool = pool(&[1, 2, 5]);
        let rules = policies(&[
            ("i1", Rule::Sm, Rational::new(1, 2)),
            ("i2", Rule::Sp, Rational::from_integer(0)),
        ]);
        let verdict = check_multi_aggregation_independence(&pool, &rules, &"i1".into(), 4, 16).unwrap();
        assert_eq!(verdict.witness().unwrap().composition, Some(vec![2, 2]));
        let verdict = check_multi_aggregation_independence(&pool, &rules, &"i2".into(), 4, 16).unwrap();
        assert!(verdict.holds());
    }

    #[test]
    fn ranking_reconstruction() {
        let pool = pool(&[]);
        let ranking: Vec<WorkerId> = ["w3", "w1", "w5", "w2", "w4"].map(WorkerId::from).to_vec();
        let ids = [InstitutionId::from("a"), InstitutionId::from("b"), InstitutionId::from("c")];
        let rules = single_priority_rule(&pool, ranking.clone(), &ids).unwrap();
        assert_eq!(reconstruct_ranking(&pool, &rules, &ids[1]).unwrap(), ranking);
    }
}
