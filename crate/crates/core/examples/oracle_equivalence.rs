//! Compares the reserve rules with the brute-force fair set on a seeded
//! random corpus.

use poolhire::oracle::{oracle_equivalence, CorpusSpec};
use poolhire::Rule;

fn main() {
    let corpus = CorpusSpec::default().with_trials(500).with_seed(1);
    for rule in [Rule::Sp, Rule::Sm, Rule::Sa, Rule::Brazil] {
        let report = oracle_equivalence(rule, &corpus).expect("supported rule");
        print!("{rule:<6} {} / {} match", report.passed, report.trials);
        if let Some(f) = report.first_failure() {
            let code = f.witness.as_ref().map(|w| w.code().to_string()).unwrap_or_default();
            print!(", first mismatch trial {} after round {} ({code})", f.trial, f.prefix.unwrap_or(0));
        }
        println!();
    }
}
