//! Looks for a split of four hires that gets each worker hired under the
//! minority reserve rule and under plain priority.

use poolhire::properties::{find_manipulation, SplitOptions};
use poolhire::{Policy, Rational, Rule, Scenario, Worker};

fn main() {
    let workers = vec![
        Worker::new("w1", 100).minority(true),
        Worker::new("w2", 90).minority(true),
        Worker::new("w3", 80),
        Worker::new("w4", 50),
        Worker::new("w5", 20).minority(true),
    ];
    let scenario = Scenario::new(workers.clone(), Policy::new(Rule::Sm, Rational::new(1, 2)), vec![4])
        .validate()
        .expect("valid scenario");
    for rule in [Rule::Sm, Rule::Sp] {
        for w in &workers {
            let found = find_manipulation(&scenario, rule, w.id.as_str(), 4, SplitOptions::default())
                .expect("within budget");
            match found {
                Some(split) => println!("{rule} {}: hired under {split:?}", w.id),
                None => println!("{rule} {}: never hired", w.id),
            }
        }
    }
}
