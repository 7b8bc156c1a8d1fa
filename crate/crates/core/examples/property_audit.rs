//! Audits one scenario file against every property and prints the verdicts.
//!
//! cargo run --example property_audit -- crates/core/scenarios/example1.json

use std::path::PathBuf;

use poolhire::format::load_scenario;
use poolhire::properties::{
    check_aggregation_independence, check_fairness, check_minority_fair, check_minority_rights, Horizon,
    PropertyVerdict, SplitOptions,
};
use poolhire::rules::run;

fn show(name: &str, verdict: &PropertyVerdict) {
    match verdict.witness() {
        None => println!("{name:<26} holds"),
        Some(w) => println!("{name:<26} violated: {} {}", w.code(), w.detail),
    }
}

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/example1.json"));
    let scenario = load_scenario(&path).expect("readable scenario").validate().expect("valid scenario");
    let selection = run(&scenario).expect("rule runs");
    let hired: Vec<_> = selection.hired.iter().map(|w| w.as_str()).collect();
    println!("{} hires {}", scenario.rule(), hired.join(" "));

    show("fairness", &check_fairness(&scenario, &selection));
    for horizon in [Horizon::EveryPrefix, Horizon::FirstRoundOnly] {
        show(&format!("minority rights {horizon:?}"), &check_minority_rights(&scenario, &selection, horizon));
        show(&format!("minority fair {horizon:?}"), &check_minority_fair(&scenario, &selection, horizon));
    }
    match check_aggregation_independence(&scenario, scenario.rule(), SplitOptions::default()) {
        Ok(v) => show("aggregation independence", &v),
        Err(e) => println!("aggregation independence  not checked: {e}"),
    }
}
