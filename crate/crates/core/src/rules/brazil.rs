use crate::model::{top_indices, BrazilPartition, ScoreProfile, Selection, ValidatedScenario};
use crate::rules::{ceil_mul, RoundState, RuleError};

/// Splits the available pool into the Top Minority group (the best
/// `min(⌈m × k⌉, |M|)` minorities) and the Others group (the best
/// `k − |TM|` of everyone else). Both lists are best first.
pub fn brazil_partition(scenario: &ValidatedScenario, k: usize) -> (Vec<usize>, Vec<usize>) {
    let workers = scenario.workers();
    let available = || (0..workers.len()).filter(|&i| !scenario.is_prior(i));
    let tm = top_indices(
        workers,
        available().filter(|&i| workers[i].is_minority()),
        ScoreProfile::Main,
        ceil_mul(scenario.m(), k),
    );
    let others = top_indices(
        workers,
        available().filter(|i| !tm.contains(i)),
        ScoreProfile::Main,
        k - tm.len(),
    );
    (tm, others)
}

/// Brazilian rule: a one-off partition into TM and O, then every round takes
/// `⌈m × q_r⌉` from TM and the rest from O, as two parallel score queues.
pub fn run_brazil(scenario: &ValidatedScenario) -> Result<Selection, RuleError> {
    brazil(scenario, scenario.sequence())
}

pub(crate) fn brazil(scenario: &ValidatedScenario, sequence: &[usize]) -> Result<Selection, RuleError> {
    let k = scenario.policy().k.unwrap_or(0);
    let total: usize = sequence.iter().sum();
    if k < total {
        return Err(RuleError::KTooSmall { k, total });
    }
    let (tm, others) = brazil_partition(scenario, k);
    let mut tm_queue = tm.iter().copied().peekable();
    let mut o_queue = others.iter().copied().peekable();

    let mut state = RoundState::new(scenario);
    for &q in sequence {
        let quota = ceil_mul(scenario.m(), q).min(q);
        let reserved: Vec<usize> = tm_queue.by_ref().take(quota).collect();
        let mut open: Vec<usize> = o_queue.by_ref().take(q - reserved.len()).collect();
        // O cannot run dry while total hires stay within k; this only
        // matters for degenerate partitions.
        let short = q - reserved.len() - open.len();
        open.extend(tm_queue.by_ref().take(short));
        state.take(&reserved);
        state.take(&open);
        state.record(q, quota, &reserved, &open);
    }
    let ids = |v: &[usize]| v.iter().map(|&i| scenario.worker(i).id.clone()).collect();
    let partition = BrazilPartition {
        tm: ids(&tm),
        o: ids(&others),
    };
    Ok(state.finish(Some(partition)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ids, Policy, Rational, Rule, Scenario, Worker, WorkerId};
    use crate::rules::run_sp;

    fn scenario(n: usize, minorities: &[usize], m: Rational, k: usize, seq: Vec<usize>) -> ValidatedScenario {
        let scores = [100, 90, 80, 50, 40, 30, 20, 10];
        let workers = (1..=n)
            .map(|i| Worker::new(format!("w{i}"), scores[i - 1]).minority(minorities.contains(&i)))
            .collect();
        Scenario::new(workers, Policy::new(Rule::Brazil, m).with_k(k), seq)
            .validate()
            .unwrap()
    }

    #[test]
    fn two_minorities_two_others() {
        let sel = run_brazil(&scenario(4, &[1, 2], Rational::new(1, 2), 4, vec![2])).unwrap();
        assert_eq!(sel.hired_set(), ids(["w1", "w3"]));
        let partition = sel.ledger.partition.unwrap();
        assert_eq!(partition.tm, ["w1", "w2"].map(WorkerId::from));
        assert_eq!(partition.o, ["w3", "w4"].map(WorkerId::from));
    }

    #[test]
    fn parallel_queues_are_split_invariant() {
        let half = Rational::new(1, 2);
        let split = run_brazil(&scenario(6, &[1, 2, 3], half, 6, vec![2, 2])).unwrap();
        let whole = run_brazil(&scenario(6, &[1, 2, 3], half, 6, vec![4])).unwrap();
        assert_eq!(split.hired_set(), ids(["w1", "w2", "w4", "w5"]));
        assert_eq!(whole.hired_set(), split.hired_set());
    }

    #[test]
    fn zero_ratio_is_sp() {
        let v = scenario(6, &[2, 5], Rational::from_integer(0), 6, vec![1, 3]);
        let b = run_brazil(&v).unwrap();
        assert!(b.ledger.partition.as_ref().unwrap().tm.is_empty());
        assert_eq!(b.hired_set(), run_sp(&v).hired_set());
    }

    #[test]
    fn partition_with_few_minorities() {
        let v = scenario(6, &[6], Rational::new(1, 2), 4, vec![2]);
        let (tm, o) = brazil_partition(&v, 4);
        assert_eq!(tm, vec![5]);
        assert_eq!(o, vec![0, 1, 2]);
    }

    #[test]
    fn k_below_requested_hires() {
        let v = scenario(6, &[1], Rational::new(1, 2), 4, vec![2]);
        assert_eq!(
            crate::rules::run_sequence(&v, &[3, 2]).unwrap_err(),
            RuleError::KTooSmall { k: 4, total: 5 }
        );
    }
}
