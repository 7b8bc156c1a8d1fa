//! Runs every reserve rule on the same pool and prints the hires round by
//! round.

use poolhire::rules::run_sequence;
use poolhire::{Policy, Rational, Rule, Scenario, Worker};

fn main() {
    let workers = vec![
        Worker::new("w1", 100).minority(true),
        Worker::new("w2", 90).minority(true),
        Worker::new("w3", 80),
        Worker::new("w4", 50),
        Worker::new("w5", 20).minority(true),
    ];
    for rule in [Rule::Sp, Rule::Sm, Rule::Sa] {
        let scenario = Scenario::new(workers.clone(), Policy::new(rule, Rational::new(1, 2)), vec![2, 2])
            .validate()
            .expect("valid scenario");
        for split in [vec![2, 2], vec![4]] {
            let selection = run_sequence(&scenario, &split).expect("rule runs");
            let rounds: Vec<String> = selection
                .ledger
                .rounds
                .iter()
                .map(|r| {
                    let hires: Vec<_> = r.hires().map(|w| w.as_str()).collect();
                    format!("reserve {} -> [{}]", r.reserve_size, hires.join(" "))
                })
                .collect();
            println!("{rule:<3} {split:?}: {}", rounds.join(", "));
        }
    }
}
