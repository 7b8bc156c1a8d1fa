use crate::model::{Rational, Selection, ValidatedScenario, Worker};
use crate::rules::ceil_mul;

use super::{horizon_prefixes, prefix_mask, Horizon, PropertyVerdict, ViolationCode, Witness};

fn describe(w: &Worker) -> String {
    match w.merit() {
        Some(s) => format!("{} ({s})", w.id),
        None => w.id.to_string(),
    }
}

/// Lowest-scored member of `hired` and highest-scored member of `unhired`
/// among the workers selected by `filter`.
fn extremes(
    workers: &[Worker],
    hired: &[bool],
    eligible: impl Fn(usize) -> bool,
) -> (Option<usize>, Option<usize>) {
    let mut low_hired: Option<usize> = None;
    let mut top_unhired: Option<usize> = None;
    for (i, w) in workers.iter().enumerate() {
        let Some(s) = w.merit() else { continue };
        if !eligible(i) {
            continue;
        }
        if hired[i] {
            if low_hired.is_none_or(|j| s < workers[j].merit().unwrap()) {
                low_hired = Some(i);
            }
        } else if top_unhired.is_none_or(|j| s > workers[j].merit().unwrap()) {
            top_unhired = Some(i);
        }
    }
    (low_hired, top_unhired)
}

fn inverted(workers: &[Worker], hired: Option<usize>, unhired: Option<usize>) -> Option<(usize, usize)> {
    let (h, u) = (hired?, unhired?);
    (workers[h].merit() < workers[u].merit()).then_some((h, u))
}

/// Fairness of a hired set: no unhired worker outscores a hired one. Workers
/// flagged in `excluded` (prior hires) take no part.
pub fn fairness_violation(workers: &[Worker], hired: &[bool], excluded: &[bool]) -> Option<Witness> {
    let (h, u) = extremes(workers, hired, |i| !excluded[i]);
    let (h, u) = inverted(workers, h, u)?;
    Some(
        Witness::new(
            ViolationCode::FairPair,
            format!("{} hired while {} is not", describe(&workers[h]), describe(&workers[u])),
        )
        .with_workers([workers[h].id.clone(), workers[u].id.clone()]),
    )
}

/// Minority rights of a hired set `H`: at least `m × |H|` minorities, or
/// every minority if there are not that many.
pub fn minority_rights_violation(workers: &[Worker], hired: &[bool], m: Rational) -> Option<Witness> {
    let size = hired.iter().filter(|&&h| h).count();
    let omega = (0..workers.len()).filter(|&i| hired[i] && workers[i].is_minority()).count();
    let minorities = workers.iter().filter(|w| w.is_minority()).count();
    let target = m * Rational::from_integer(size as i64);
    if Rational::from_integer(minorities as i64) >= target {
        if Rational::from_integer(omega as i64) < target {
            return Some(Witness::new(
                ViolationCode::MrRatio,
                format!("{omega} minorities among {size} hires, below {target}"),
            ));
        }
    } else {
        let missing: Vec<_> = workers
            .iter()
            .zip(hired)
            .filter(|(w, &h)| w.is_minority() && !h)
            .map(|(w, _)| w.id.clone())
            .collect();
        if !missing.is_empty() {
            return Some(
                Witness::new(
                    ViolationCode::MrRatio,
                    format!("only {minorities} minorities exist but not all are hired"),
                )
                .with_workers(missing),
            );
        }
    }
    None
}

/// Minority fairness of a hired set, clauses checked in order: fairness
/// within each group, no non-minority hired over a better minority, and no
/// minority hired over a better non-minority unless the minority count is at
/// most `⌈m × |H|⌉`.
pub fn minority_fair_violation(workers: &[Worker], hired: &[bool], m: Rational) -> Option<Witness> {
    let pair = |code, a: usize, b: usize, detail: String| {
        Witness::new(code, detail).with_workers([workers[a].id.clone(), workers[b].id.clone()])
    };
    for minority in [true, false] {
        let (h, u) = extremes(workers, hired, |i| workers[i].is_minority() == minority);
        if let Some((h, u)) = inverted(workers, h, u) {
            let group = if minority { "minority" } else { "non-minority" };
            return Some(pair(
                ViolationCode::MfClauseI,
                h,
                u,
                format!("{group} {} hired over {}", describe(&workers[h]), describe(&workers[u])),
            ));
        }
    }

    let (low_non, _) = extremes(workers, hired, |i| !workers[i].is_minority());
    let (_, top_min) = extremes(workers, hired, |i| workers[i].is_minority());
    if let Some((h, u)) = inverted(workers, low_non, top_min) {
        return Some(pair(
            ViolationCode::MfClauseII,
            h,
            u,
            format!(
                "non-minority {} hired over minority {}",
                describe(&workers[h]),
                describe(&workers[u])
            ),
        ));
    }

    let (low_min, _) = extremes(workers, hired, |i| workers[i].is_minority());
    let (_, top_non) = extremes(workers, hired, |i| !workers[i].is_minority());
    if let Some((h, u)) = inverted(workers, low_min, top_non) {
        let size = hired.iter().filter(|&&x| x).count();
        let omega = (0..workers.len()).filter(|&i| hired[i] && workers[i].is_minority()).count();
        let cap = ceil_mul(m, size);
        if omega > cap {
            return Some(pair(
                ViolationCode::MfClauseIII,
                u,
                h,
                format!(
                    "{} passed over for minority {} with {omega} minorities among {size} hires, above {cap}",
                    describe(&workers[u]),
                    describe(&workers[h])
                ),
            ));
        }
    }
    None
}

fn first_violation(
    scenario: &ValidatedScenario,
    selection: &Selection,
    prefixes: std::ops::RangeInclusive<usize>,
    check: impl Fn(&[bool]) -> Option<Witness>,
) -> PropertyVerdict {
    let found = prefixes
        .into_iter()
        .find_map(|r| check(&prefix_mask(scenario, selection, r)).map(|w| w.at_prefix(r)));
    PropertyVerdict::from_witness(found)
}

/// Fairness of the new hires after every round.
pub fn check_fairness(scenario: &ValidatedScenario, selection: &Selection) -> PropertyVerdict {
    let excluded: Vec<bool> = (0..scenario.workers().len()).map(|i| scenario.is_prior(i)).collect();
    let rounds = selection.round_count();
    first_violation(scenario, selection, 1..=rounds, |mask| {
        let fresh: Vec<bool> = mask.iter().zip(&excluded).map(|(&h, &e)| h && !e).collect();
        fairness_violation(scenario.workers(), &fresh, &excluded)
    })
}

/// Minority rights of prior plus new hires, at the prefixes named by
/// `horizon`.
pub fn check_minority_rights(
    scenario: &ValidatedScenario,
    selection: &Selection,
    horizon: Horizon,
) -> PropertyVerdict {
    let prefixes = horizon_prefixes(horizon, selection.round_count());
    first_violation(scenario, selection, prefixes, |mask| {
        minority_rights_violation(scenario.workers(), mask, scenario.m())
    })
}

/// Minority fairness of prior plus new hires, at the prefixes named by
/// `horizon`.
pub fn check_minority_fair(
    scenario: &ValidatedScenario,
    selection: &Selection,
    horizon: Horizon,
) -> PropertyVerdict {
    let prefixes = horizon_prefixes(horizon, selection.round_count());
    first_violation(scenario, selection, prefixes, |mask| {
        minority_fair_violation(scenario.workers(), mask, scenario.m())
    })
}

/// Re-checks a pair or ratio witness against `selection`: true when the
/// recorded violation is present at the recorded prefix.
pub fn replay_selection_witness(
    scenario: &ValidatedScenario,
    selection: &Selection,
    witness: &Witness,
) -> bool {
    let Some(prefix) = witness.prefix else { return false };
    if prefix == 0 || prefix > selection.round_count() {
        return false;
    }
    let mask = prefix_mask(scenario, selection, prefix);
    let index = |k: usize| witness.workers.get(k).and_then(|id| scenario.index_of(id.as_str()));
    let merit = |i: usize| scenario.worker(i).merit();
    let minority = |i: usize| scenario.worker(i).is_minority();
    let size = mask.iter().filter(|&&h| h).count();
    let omega = (0..mask.len()).filter(|&i| mask[i] && minority(i)).count();
    match witness.code() {
        ViolationCode::FairPair | ViolationCode::MfClauseI | ViolationCode::MfClauseII => {
            let (Some(h), Some(u)) = (index(0), index(1)) else { return false };
            let groups_ok = match witness.code() {
                ViolationCode::FairPair => !scenario.is_prior(h) && !scenario.is_prior(u),
                ViolationCode::MfClauseI => minority(h) == minority(u),
                _ => !minority(h) && minority(u),
            };
            groups_ok && mask[h] && !mask[u] && merit(h) < merit(u)
        }
        ViolationCode::MfClauseIII => {
            let (Some(u), Some(h)) = (index(0), index(1)) else { return false };
            !minority(u)
                && minority(h)
                && !mask[u]
                && mask[h]
                && merit(h) < merit(u)
                && omega > ceil_mul(scenario.m(), size)
        }
        ViolationCode::MrRatio => {
            minority_rights_violation(scenario.workers(), &mask, scenario.m()).is_some()
        }
        _ => false,
    }
}
