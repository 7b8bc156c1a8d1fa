//! Score-based sequential hiring from a shared pool of workers, with
//! affirmative-action reserves.
//!
//! The crate provides engines for the single-institution rules (sequential
//! priority, sequential and adjusted minority reserves, the Brazilian,
//! French and New South Wales rules), decision procedures for the fairness
//! properties those rules are judged by, brute-force oracles that serve as
//! ground truth, and a plural-sequence engine for several institutions
//! drawing from one pool.

pub mod cli;
pub mod format;
pub mod model;
pub mod multi;
pub mod oracle;
pub mod properties;
pub mod rules;

pub use model::{
    ids, top_q, BrazilPartition, Gender, Policy, Rational, RoundLedger, RoundRecord, Rule, Scenario,
    ScoreProfile, Selection, ValidatedScenario, ValidationError, Worker, WorkerId,
};
