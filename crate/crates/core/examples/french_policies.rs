//! The two French disability quotas on the same pools: the first-round
//! exemption misses minority rights and depends on the split.

use itertools::Itertools;
use poolhire::rules::run_sequence;
use poolhire::{Policy, Rational, Rule, Scenario, Worker};

fn worker(id: &str, score: i64, disabled: bool) -> Worker {
    let mut w = Worker::new(id, 0);
    w.score = None;
    w.open_score = Some(Rational::from_integer(score));
    w.in_open_pool = true;
    if disabled {
        w.disability_score = w.open_score;
        w.in_disability_pool = true;
    }
    w
}

fn main() {
    for disabled in [["w3", "w4"], ["w4", "w5"]] {
        let pool: Vec<Worker> = [("w1", 50), ("w2", 40), ("w3", 30), ("w4", 20), ("w5", 10)]
            .iter()
            .map(|&(id, s)| worker(id, s, disabled.contains(&id)))
            .collect();
        println!("disability pool {disabled:?}");
        for rule in [Rule::FrenchP1, Rule::FrenchP2] {
            let scenario = Scenario::new(pool.clone(), Policy::new(rule, Rational::new(1, 2)), vec![4])
                .validate()
                .expect("valid scenario");
            for split in [vec![2], vec![2, 2], vec![4]] {
                let hired = run_sequence(&scenario, &split).expect("rule runs").hired_set();
                println!("  {rule:<9} {split:?}: {}", hired.iter().join(" "));
            }
        }
    }
}
