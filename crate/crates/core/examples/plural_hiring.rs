//! Several institutions hiring from one pool: a shared ranking against
//! reserve rules with different ratios.

use itertools::Itertools;
use poolhire::multi::{
    apply_plural_sequence, check_common_top, check_permutation_independence, hired_union, single_priority_rule,
    InstitutionId, PluralSequence, PluralStep, PolicyRule, RuleMap,
};
use poolhire::{Policy, Rational, Rule, Worker};

fn main() {
    let pool = vec![
        Worker::new("w1", 100).minority(true),
        Worker::new("w2", 90).minority(true),
        Worker::new("w3", 80),
        Worker::new("w4", 50),
        Worker::new("w5", 20).minority(true),
    ];
    let institutions = ["i1", "i2", "i3"].map(InstitutionId::from);
    let ranking = pool.iter().map(|w| w.id.clone()).collect();
    let shared = single_priority_rule(&pool, ranking, &institutions).expect("valid ranking");
    let seq = PluralSequence::new([PluralStep::new("i1", 1), PluralStep::new("i3", 2), PluralStep::new("i1", 1)]);
    for (step, matching) in seq.steps().iter().zip(apply_plural_sequence(&pool, &shared, &seq, None).unwrap()) {
        let by: Vec<String> = institutions
            .iter()
            .map(|i| format!("{i}={{{}}}", matching.hires_of(i).iter().join(",")))
            .collect();
        println!("after {} hires {}: {}", step.institution, step.count, by.join(" "));
    }

    let mut mixed = RuleMap::new();
    mixed.insert("i1".into(), Box::new(PolicyRule::new(Policy::new(Rule::Sa, Rational::new(1, 2)))));
    mixed.insert("i2".into(), Box::new(PolicyRule::new(Policy::new(Rule::Sa, Rational::from_integer(0)))));
    let seq = PluralSequence::new([PluralStep::new("i1", 2), PluralStep::new("i2", 2)]);
    let union = hired_union(&apply_plural_sequence(&pool, &mixed, &seq, None).unwrap());
    println!("mixed ratios hire {}", union.iter().join(" "));
    for (name, rules) in [("shared ranking", &shared), ("mixed ratios", &mixed)] {
        let top = check_common_top(&pool, rules).unwrap();
        let order = check_permutation_independence(&pool, rules, &seq, 8).unwrap();
        println!("{name}: common top {}, order independent {}", top.holds(), order.holds());
        if let Some(w) = order.witness() {
            println!("  reversed order hires {}", w.hired.as_ref().unwrap().iter().join(" "));
        }
    }
}
