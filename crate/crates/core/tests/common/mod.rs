//! Shared fixtures and a brute-force fair-set oracle written independently
//! of the library: plain integer arithmetic over bitmasks.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use poolhire::format::load_scenario;
use poolhire::{Policy, Rational, Rule, Scenario, ValidatedScenario, Worker, WorkerId};
use rand::seq::index::sample;
use rand::Rng;

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"))
}

pub fn load(name: &str) -> Scenario {
    load_scenario(&scenario_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn validated(name: &str) -> ValidatedScenario {
    load(name).validate().unwrap()
}

pub fn set(names: &[&str]) -> BTreeSet<WorkerId> {
    names.iter().map(|&s| WorkerId::from(s)).collect()
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Workers `w1..` with the given scores; `minority` lists 1-based positions.
pub fn workers(scores: &[i64], minority: &[usize]) -> Vec<Worker> {
    scores
        .iter()
        .enumerate()
        .map(|(i, &s)| Worker::new(format!("w{}", i + 1), s).minority(minority.contains(&(i + 1))))
        .collect()
}

/// Scores 100, 90, 80, 50, 20 with w1, w2, w5 in the minority.
pub fn five_workers() -> Vec<Worker> {
    workers(&[100, 90, 80, 50, 20], &[1, 2, 5])
}

pub fn scenario(workers: Vec<Worker>, rule: Rule, m: Rational, sequence: Vec<usize>) -> ValidatedScenario {
    Scenario::new(workers, Policy::new(rule, m), sequence).validate().unwrap()
}

/// Every size-`q` subset that respects minority rights and is minority fair
/// under ratio `m`, by main score.
pub fn brute_fair_sets(workers: &[Worker], m: Rational, q: usize) -> Vec<BTreeSet<WorkerId>> {
    let n = workers.len();
    let score: Vec<Rational> = workers.iter().map(|w| w.score.expect("main score")).collect();
    let minority: Vec<bool> = workers.iter().map(|w| w.minority).collect();
    let (num, den) = (*m.numer(), *m.denom());
    let total_minorities = minority.iter().filter(|&&b| b).count() as i64;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != q {
            continue;
        }
        let hired = |i: usize| mask >> i & 1 == 1;
        let size = q as i64;
        let omega = (0..n).filter(|&i| hired(i) && minority[i]).count() as i64;
        let rights = if total_minorities * den >= num * size {
            omega * den >= num * size
        } else {
            omega == total_minorities
        };
        let over_cap = (omega - 1) * den >= num * size;
        let mut fair = true;
        for a in (0..n).filter(|&i| hired(i)) {
            for b in (0..n).filter(|&i| !hired(i)) {
                if score[b] < score[a] {
                    continue;
                }
                let bad = match (minority[a], minority[b]) {
                    (x, y) if x == y => true,
                    (false, true) => true,
                    (true, false) => over_cap,
                    _ => unreachable!(),
                };
                fair &= !bad;
            }
        }
        if rights && fair {
            out.push((0..n).filter(|&i| hired(i)).map(|i| workers[i].id.clone()).collect());
        }
    }
    out
}

/// Workers `w01..` with distinct scores in 1..=100 and coin-flip minorities.
pub fn random_workers<R: Rng>(rng: &mut R, n: usize) -> Vec<Worker> {
    sample(rng, 100, n)
        .iter()
        .enumerate()
        .map(|(i, s)| Worker::new(format!("w{:02}", i + 1), s as i64 + 1).minority(rng.gen_bool(0.5)))
        .collect()
}

/// A random split of `total` into positive multiples of `granularity`.
pub fn random_composition<R: Rng>(rng: &mut R, total: usize, granularity: usize) -> Vec<usize> {
    let units = total / granularity;
    let mut parts = Vec::new();
    let mut run = 1;
    for _ in 1..units {
        if rng.gen_bool(0.5) {
            parts.push(run * granularity);
            run = 1;
        } else {
            run += 1;
        }
    }
    if units > 0 {
        parts.push(run * granularity);
    }
    parts
}

/// Every split of `total` into positive parts, by cut-point bitmask.
pub fn all_compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return Vec::new();
    }
    (0u32..1 << (total - 1))
        .map(|cuts| {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..total - 1 {
                if cuts >> i & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            parts
        })
        .collect()
}

/// The `q` best workers by main score, excluding `skip`.
pub fn top_by_score(workers: &[Worker], skip: &BTreeSet<WorkerId>, q: usize) -> BTreeSet<WorkerId> {
    let mut pool: Vec<&Worker> = workers.iter().filter(|w| !skip.contains(&w.id)).collect();
    pool.sort_by_key(|w| std::cmp::Reverse(w.score));
    pool.into_iter().take(q).map(|w| w.id.clone()).collect()
}

/// Report name, arguments, expected exit code.
pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("run_example1_sm", &["run", "scenarios/example1.json", "--rule", "sm"], 0),
    ("run_example1_sa", &["run", "scenarios/example1.json", "--rule", "sa"], 0),
    ("run_example2", &["run", "scenarios/example2.json"], 0),
    ("run_example3", &["run", "scenarios/example3.json"], 0),
    ("run_nsw", &["run", "scenarios/nsw.json"], 0),
    ("run_french_p1_split", &["run", "scenarios/french_p1_split.json"], 0),
    ("run_french_p2", &["run", "scenarios/french_p2.json"], 0),
    ("run_three_candidates", &["run", "scenarios/three_candidates.json"], 0),
    ("check_ai_sm", &["check", "scenarios/example1.json", "--property", "aggregation-independence", "--rule", "sm"], 1),
    ("check_ai_sa", &["check", "scenarios/example1.json", "--property", "aggregation-independence", "--rule", "sa"], 0),
    ("check_rights_sm", &["check", "scenarios/example1.json", "--property", "minority-rights", "--rule", "sm"], 0),
    ("check_fair_sm", &["check", "scenarios/example1.json", "--property", "minority-fair", "--rule", "sm"], 1),
    ("check_fair_sm_static", &["check", "scenarios/example1.json", "--property", "minority-fair", "--rule", "sm", "--horizon", "first-round-only"], 0),
    ("check_fairness_nsw", &["check", "scenarios/nsw.json", "--property", "fairness", "--rule", "nsw"], 1),
    ("check_fair_brazil", &["check", "scenarios/example3.json", "--property", "minority-fair"], 1),
    ("check_rights_french_p1", &["check", "scenarios/french_p1_rights.json", "--property", "minority-rights"], 1),
    ("manipulate_sm_w5", &["manipulate", "scenarios/example1.json", "--rule", "sm", "--target", "w5", "--total", "4"], 0),
    ("manipulate_sp_w5", &["manipulate", "scenarios/example1.json", "--rule", "sp", "--target", "w5", "--total", "4"], 1),
    ("oracle_unique_set", &["oracle", "scenarios/example1.json", "--mode", "unique-set", "--q", "4"], 0),
    ("oracle_transform", &["oracle", "scenarios/transform_pool.json", "--mode", "transform"], 1),
    ("oracle_equivalence_sa", &["oracle", "--corpus", "default", "--mode", "equivalence", "--rule", "sa", "--trials", "1000"], 0),
    ("oracle_equivalence_sm", &["oracle", "--corpus", "default", "--mode", "equivalence", "--rule", "sm", "--trials", "200"], 1),
    ("plural_run", &["plural", "scenarios/plural_priority.json"], 0),
    ("plural_permutation_priority", &["plural", "scenarios/plural_priority.json", "--check", "permutation-independence"], 0),
    ("plural_permutation_mixed", &["plural", "scenarios/mixed_ratio_institutions.json", "--check", "permutation-independence"], 1),
    ("plural_common_top", &["plural", "scenarios/plural_priority.json", "--check", "common-top"], 0),
    ("plural_ai", &["plural", "scenarios/plural_priority.json", "--check", "aggregation-independence", "--institution", "i1", "--q", "3"], 0),
];

