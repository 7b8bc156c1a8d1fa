mod common;

use std::collections::BTreeSet;

use common::*;
use poolhire::oracle::{
    generate_instance, is_fair_set, oracle_equivalence, transform_search, unique_fair_set, CorpusSpec,
    OracleError, TrialVerdict,
};
use poolhire::properties::{check_minority_fair, replay_selection_witness, Horizon, ViolationCode};
use poolhire::rules::run_sequence;
use poolhire::{Rational, Rule, WorkerId};

fn ids(v: &[&str]) -> Vec<WorkerId> {
    v.iter().map(|&s| WorkerId::from(s)).collect()
}

#[test]
fn unique_set_on_five_workers() {
    let w = five_workers();
    let found = unique_fair_set(&w, ratio(1, 2), 4).unwrap();
    assert_eq!(found.set, set(&["w1", "w2", "w3", "w4"]));
    assert_eq!(found.examined, 5);
    assert_eq!(brute_fair_sets(&w, ratio(1, 2), 4), vec![found.set]);
}

#[test]
fn whole_pool_and_zero_ratio() {
    let w = five_workers();
    let all: BTreeSet<_> = w.iter().map(|x| x.id.clone()).collect();
    assert_eq!(unique_fair_set(&w, ratio(1, 2), 5).unwrap().set, all);
    for q in 0..=5 {
        let top = top_by_score(&w, &BTreeSet::new(), q);
        assert_eq!(unique_fair_set(&w, ratio(0, 1), q).unwrap().set, top);
    }
}

#[test]
fn library_and_brute_force_agree_on_the_corpus() {
    let spec = CorpusSpec::default().with_seed(11).with_trials(300).with_max_workers(10);
    for trial in 0..spec.trials {
        let s = generate_instance(&spec, trial);
        let m = s.policy.m;
        let mut q = 0;
        for &part in &s.sequence {
            q += part;
            let brute = brute_fair_sets(&s.workers, m, q);
            assert_eq!(brute.len(), 1, "trial {trial} q {q}");
            assert_eq!(unique_fair_set(&s.workers, m, q).unwrap().set, brute[0]);
            assert!(is_fair_set(&s.workers, m, &brute[0]).unwrap());
        }
    }
}

#[test]
fn bounds_are_errors() {
    let w = five_workers();
    assert_eq!(
        unique_fair_set(&w, ratio(1, 2), 6).unwrap_err(),
        OracleError::QExceedsPool { q: 6, pool: 5 }
    );
    let big = workers(&(1..=21).collect::<Vec<_>>(), &[]);
    assert!(matches!(unique_fair_set(&big, ratio(0, 1), 1), Err(OracleError::PoolTooLarge { .. })));
    assert_eq!(
        oracle_equivalence(Rule::Nsw, &CorpusSpec::default()).unwrap_err(),
        OracleError::UnsupportedRule(Rule::Nsw)
    );
}

#[test]
fn sa_has_no_mismatches() {
    let report = oracle_equivalence(Rule::Sa, &CorpusSpec::default().with_trials(300)).unwrap();
    assert_eq!((report.passed, report.failed), (300, 0));
}

#[test]
fn sm_mismatch_witness_replays() {
    let corpus = CorpusSpec::default().with_trials(300);
    let report = oracle_equivalence(Rule::Sm, &corpus).unwrap();
    assert!(report.failed > 0);
    let first = report.first_failure().unwrap();
    let w = first.witness.as_ref().unwrap();
    assert_eq!(w.code(), ViolationCode::MfClauseIII);

    let mut s = generate_instance(&corpus, first.trial);
    s.policy.rule = Rule::Sm;
    let v = s.validate().unwrap();
    let sel = run_sequence(&v, v.sequence()).unwrap();
    assert!(replay_selection_witness(&v, &sel, w));
    assert!(!check_minority_fair(&v, &sel, Horizon::EveryPrefix).holds());
}

#[test]
fn zero_ratio_corpus_matches_for_reserve_rules() {
    let corpus = CorpusSpec::default().with_trials(200).with_ratios(vec![Rational::from_integer(0)]);
    for rule in [Rule::Sp, Rule::Sm, Rule::Sa] {
        assert_eq!(oracle_equivalence(rule, &corpus).unwrap().failed, 0, "{rule}");
    }
}

#[test]
fn records_are_reproducible() {
    let corpus = CorpusSpec::default().with_seed(3).with_trials(50);
    let a = oracle_equivalence(Rule::Sm, &corpus).unwrap();
    let b = oracle_equivalence(Rule::Sm, &corpus).unwrap();
    assert_eq!(a.to_json_lines(), b.to_json_lines());
    assert_eq!(a.to_json_lines().lines().count(), 50);
    assert!(a.records.iter().all(|r| r.seed == 3));
    assert_eq!(
        a.records.iter().filter(|r| r.verdict == TrialVerdict::Mismatch).count(),
        a.failed
    );
}

#[test]
fn transform_search_examples() {
    let s = load("transform_pool.json");
    let m = s.policy.m;
    assert!(transform_search(&s.workers, m, &s.subpools).unwrap().orderings.is_empty());
    let whole = transform_search(&s.workers, m, &[]).unwrap();
    assert_eq!(whole.orderings, vec![ids(&["w2", "w1", "w4", "w3"])]);

    let plain: Vec<_> = s.workers.iter().cloned().map(|w| w.minority(false)).collect();
    let r = transform_search(&plain, m, &[]).unwrap();
    assert!(r.orderings.contains(&ids(&["w1", "w2", "w3", "w4"])));
}
