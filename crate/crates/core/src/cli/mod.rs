//! Command-line front end.
//!
//! Exit codes: 0 when a run succeeds or a property holds, 1 when a
//! violation or an absence is found, 2 on invalid input or an exceeded
//! budget. Every flag can also be set through a `POOLHIRE_*` environment
//! variable; flags win.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::format::FormatError;
use crate::model::{Rule, ValidationError};
use crate::multi::MultiError;
use crate::oracle::OracleError;
use crate::properties::{Horizon, PropertyError};
use crate::rules::RuleError;

pub use report::FORMAT_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "poolhire", version, about = "Sequential hiring rules, property audits and oracles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a rule on a scenario and report the hires round by round.
    Run(RunArgs),
    /// Decide one property for a scenario.
    Check(CheckArgs),
    /// Search the round splits for one that gets a target worker hired.
    Manipulate(ManipulateArgs),
    /// Brute-force ground truth: unique fair set, rule equivalence, score transforms.
    Oracle(OracleArgs),
    /// Run or audit several institutions hiring from one pool.
    Plural(PluralArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report here instead of standard output.
    #[arg(long, short, env = "POOLHIRE_OUTPUT")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(required_unless_present = "replay")]
    pub scenario: Option<PathBuf>,
    /// Rule to run instead of the scenario's own.
    #[arg(long, env = "POOLHIRE_RULE")]
    pub rule: Option<Rule>,
    /// Also write a CSV ledger with one row per hire.
    #[arg(long, env = "POOLHIRE_CSV")]
    pub csv: Option<PathBuf>,
    /// Re-execute a previous run report and compare.
    #[arg(long, conflicts_with_all = ["scenario", "rule"])]
    pub replay: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Fairness,
    MinorityRights,
    MinorityFair,
    AggregationIndependence,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub scenario: PathBuf,
    #[arg(long, value_enum, env = "POOLHIRE_PROPERTY")]
    pub property: Property,
    #[arg(long, env = "POOLHIRE_RULE")]
    pub rule: Option<Rule>,
    /// every-prefix (dynamic) or first-round-only (static).
    #[arg(long, env = "POOLHIRE_HORIZON", default_value = "every-prefix")]
    pub horizon: Horizon,
    /// Largest total whose splits are enumerated.
    #[arg(long, env = "POOLHIRE_BUDGET")]
    pub budget: Option<usize>,
    /// Round sizes must be multiples of this.
    #[arg(long, env = "POOLHIRE_GRANULARITY")]
    pub granularity: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ManipulateArgs {
    pub scenario: PathBuf,
    #[arg(long, env = "POOLHIRE_TARGET")]
    pub target: String,
    /// Total hires to split; defaults to the scenario's total.
    #[arg(long, env = "POOLHIRE_TOTAL")]
    pub total: Option<usize>,
    #[arg(long, env = "POOLHIRE_RULE")]
    pub rule: Option<Rule>,
    #[arg(long, env = "POOLHIRE_BUDGET")]
    pub budget: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMode {
    UniqueSet,
    Equivalence,
    Transform,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Scenario for the unique-set and transform modes.
    pub scenario: Option<PathBuf>,
    #[arg(long, value_enum, env = "POOLHIRE_MODE")]
    pub mode: OracleMode,
    /// Set size for unique-set; defaults to the scenario's total.
    #[arg(long, env = "POOLHIRE_Q")]
    pub q: Option<usize>,
    /// Random corpus for equivalence mode; only `default` exists.
    #[arg(long, env = "POOLHIRE_CORPUS")]
    pub corpus: Option<String>,
    #[arg(long, env = "POOLHIRE_RULE")]
    pub rule: Option<Rule>,
    #[arg(long, env = "POOLHIRE_TRIALS", default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, env = "POOLHIRE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "POOLHIRE_MAX_WORKERS", default_value_t = 12)]
    pub max_workers: usize,
    /// Write one JSON record per trial here.
    #[arg(long, env = "POOLHIRE_RECORDS")]
    pub records: Option<PathBuf>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PluralCheck {
    PermutationIndependence,
    CommonTop,
    AggregationIndependence,
}

#[derive(Debug, Args)]
pub struct PluralArgs {
    pub scenario: PathBuf,
    /// Audit a property instead of running the plural sequence.
    #[arg(long, value_enum, env = "POOLHIRE_CHECK")]
    pub check: Option<PluralCheck>,
    /// Institution for the aggregation check.
    #[arg(long, env = "POOLHIRE_INSTITUTION")]
    pub institution: Option<String>,
    /// Hire count for the aggregation check.
    #[arg(long, env = "POOLHIRE_Q")]
    pub q: Option<usize>,
    #[arg(long, env = "POOLHIRE_BUDGET")]
    pub budget: Option<usize>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("invalid scenario: {0}")]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Multi(#[from] MultiError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_INVALID };
        }
    };
    match commands::execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}
