//! Sequential priority and the two reserve-based rules (SM, SA).

use crate::model::{ScoreProfile, Selection, ValidatedScenario};
use crate::rules::{ceil_mul, RoundState};

/// Sequential priority: each round hires the top remaining workers.
pub fn run_sp(scenario: &ValidatedScenario) -> Selection {
    sp(scenario, scenario.sequence())
}

/// Sequential minority reserves: each round reserves `⌈m × q_r⌉` slots for
/// the top remaining minorities, then fills the rest by score.
pub fn run_sm(scenario: &ValidatedScenario) -> Selection {
    sm(scenario, scenario.sequence())
}

/// Sequential adjusted minority reserves: the round's reserve tops the
/// cumulative minority count up to `⌈m × Q_r⌉`, where `Q_r` counts every
/// hire requested so far (prior hires included).
pub fn run_sa(scenario: &ValidatedScenario) -> Selection {
    sa(scenario, scenario.sequence())
}

pub(crate) fn sp(scenario: &ValidatedScenario, sequence: &[usize]) -> Selection {
    reserve_rounds(scenario, sequence, |_, _| 0)
}

pub(crate) fn sm(scenario: &ValidatedScenario, sequence: &[usize]) -> Selection {
    let m = scenario.m();
    reserve_rounds(scenario, sequence, |_, q| ceil_mul(m, q))
}

pub(crate) fn sa(scenario: &ValidatedScenario, sequence: &[usize]) -> Selection {
    let m = scenario.m();
    let mut cumulative = scenario.prior_count();
    reserve_rounds(scenario, sequence, move |state, q| {
        cumulative += q;
        ceil_mul(m, cumulative).saturating_sub(state.minority_count())
    })
}

/// Runs rounds where `reserve(state, q)` gives the round's minority quota.
/// Unfilled reserved slots roll into the open phase of the same round.
fn reserve_rounds(
    scenario: &ValidatedScenario,
    sequence: &[usize],
    mut reserve: impl FnMut(&RoundState<'_>, usize) -> usize,
) -> Selection {
    let mut state = RoundState::new(scenario);
    for &q in sequence {
        let quota = reserve(&state, q).min(q);
        let reserved = state.top(|w| w.is_minority(), ScoreProfile::Main, quota);
        state.take(&reserved);
        let open = state.top(|_| true, ScoreProfile::Main, q - reserved.len());
        state.take(&open);
        state.record(q, quota, &reserved, &open);
    }
    state.finish(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ids, Policy, Rational, Rule, Scenario, Worker, WorkerId};

    fn five_workers(rule: Rule, seq: Vec<usize>) -> ValidatedScenario {
        let workers = vec![
            Worker::new("w1", 100).minority(true),
            Worker::new("w2", 90).minority(true),
            Worker::new("w3", 80),
            Worker::new("w4", 50),
            Worker::new("w5", 20).minority(true),
        ];
        Scenario::new(workers, Policy::new(rule, Rational::new(1, 2)), seq)
            .validate()
            .unwrap()
    }

    fn eight_workers(rule: Rule, seq: Vec<usize>) -> ValidatedScenario {
        let workers = (1..=8)
            .map(|i| Worker::new(format!("w{i}"), 110 - 10 * i as i64).minority(i >= 5))
            .collect();
        Scenario::new(workers, Policy::new(rule, Rational::new(1, 2)), seq)
            .validate()
            .unwrap()
    }

    #[test]
    fn sp_examples() {
        assert_eq!(run_sp(&five_workers(Rule::Sp, vec![2, 2])).hired_set(), ids(["w1", "w2", "w3", "w4"]));
        assert_eq!(run_sp(&five_workers(Rule::Sp, vec![1, 1, 1])).hired_set(), ids(["w1", "w2", "w3"]));
        let s = five_workers(Rule::Sp, vec![5]).into_scenario().with_prior_hires([WorkerId::from("w1")]);
        let sel = run_sp(&s.validate().unwrap());
        assert_eq!(sel.hired_set(), ids(["w2", "w3", "w4", "w5"]));
        assert_eq!(sel.ledger.rounds[0].reserve_size, 0);
    }

    #[test]
    fn sm_five_workers_depends_on_split() {
        let split = run_sm(&five_workers(Rule::Sm, vec![2, 2]));
        assert_eq!(split.hired_set(), ids(["w1", "w2", "w3", "w5"]));
        assert_eq!(split.ledger.rounds[1].reserved_hires, vec![WorkerId::from("w5")]);
        assert_eq!(split.ledger.rounds[1].open_hires, vec![WorkerId::from("w3")]);
        let whole = run_sm(&five_workers(Rule::Sm, vec![4]));
        assert_eq!(whole.hired_set(), ids(["w1", "w2", "w3", "w4"]));
    }

    #[test]
    fn sm_eight_workers_single_hires() {
        assert_eq!(run_sm(&eight_workers(Rule::Sm, vec![1, 1, 1, 1])).hired_set(), ids(["w5", "w6", "w7", "w8"]));
        assert_eq!(run_sm(&eight_workers(Rule::Sm, vec![4])).hired_set(), ids(["w1", "w2", "w5", "w6"]));
    }

    #[test]
    fn sm_with_zero_ratio_is_sp() {
        let mut s = five_workers(Rule::Sm, vec![1, 3]).into_scenario();
        s.policy.m = Rational::from_integer(0);
        let v = s.validate().unwrap();
        assert_eq!(run_sm(&v), run_sp(&v));
    }

    #[test]
    fn sa_examples() {
        assert_eq!(run_sa(&five_workers(Rule::Sa, vec![4])).hired_set(), ids(["w1", "w2", "w3", "w4"]));
        assert_eq!(run_sa(&five_workers(Rule::Sa, vec![2, 2])).hired_set(), ids(["w1", "w2", "w3", "w4"]));
        let sel = run_sa(&eight_workers(Rule::Sa, vec![1, 1, 1, 1]));
        assert_eq!(sel.hired, ["w5", "w1", "w6", "w2"].map(WorkerId::from));
        let reserves: Vec<usize> = sel.ledger.rounds.iter().map(|r| r.reserve_size).collect();
        assert_eq!(reserves, [1, 0, 1, 0]);
    }

    #[test]
    fn reserve_rolls_over_when_minorities_run_out() {
        let mut s = five_workers(Rule::Sm, vec![2, 2]).into_scenario();
        s.workers.iter_mut().for_each(|w| w.minority = false);
        s.workers[4].minority = true;
        let sel = run_sm(&s.validate().unwrap());
        // Round 2 reserve finds no minority left and hires by score.
        assert_eq!(sel.ledger.rounds[1].reserved_hires, Vec::<WorkerId>::new());
        assert_eq!(sel.ledger.rounds[1].open_hires, vec![WorkerId::from("w2"), WorkerId::from("w3")]);
    }

    #[test]
    fn ledger_counts_are_cumulative() {
        let sel = run_sa(&eight_workers(Rule::Sa, vec![1, 1, 1, 1]));
        let counts: Vec<(usize, usize)> = sel
            .ledger
            .rounds
            .iter()
            .map(|r| (r.cumulative_minority_count, r.cumulative_total))
            .collect();
        assert_eq!(counts, [(1, 1), (1, 2), (2, 3), (2, 4)]);
    }
}
