use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::format::{load_scenario, read_json, scenario_digest};
use crate::model::{Rule, Scenario, Selection, WorkerId};
use crate::multi::{
    apply_plural_sequence, check_common_top, check_multi_aggregation_independence,
    check_permutation_independence, hired_union, load_plural, InstitutionId, Matching, PluralScenario,
    DEFAULT_PERMUTATION_BUDGET,
};
use crate::oracle::{oracle_equivalence, transform_search, unique_fair_set, CorpusSpec, TrialRecord};
use crate::properties::{
    check_aggregation_independence, check_fairness, check_minority_fair, check_minority_rights,
    find_manipulation, Horizon, PropertyVerdict, SplitOptions, DEFAULT_COMPOSITION_BUDGET,
};
use crate::rules::run;

use super::report::{ledger_csv, Report, RunReportIn};
use super::{
    CheckArgs, CliError, Command, ManipulateArgs, OracleArgs, OracleMode, OutputArgs, PluralArgs,
    PluralCheck, Property, RunArgs, EXIT_FOUND, EXIT_OK,
};

pub(super) fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Run(args) => run_cmd(args, out),
        Command::Check(args) => check_cmd(args, out),
        Command::Manipulate(args) => manipulate_cmd(args, out),
        Command::Oracle(args) => oracle_cmd(args, out),
        Command::Plural(args) => plural_cmd(args, out),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn emit(args: &OutputArgs, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match &args.output {
        Some(path) => write_file(path, text),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Write {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn load(path: &Path, rule: Option<Rule>) -> Result<Scenario, CliError> {
    let mut scenario = load_scenario(path)?;
    if let Some(rule) = rule {
        scenario.policy.rule = rule;
    }
    Ok(scenario)
}

fn verdict_code(v: &PropertyVerdict) -> i32 {
    if v.holds() {
        EXIT_OK
    } else {
        EXIT_FOUND
    }
}

#[derive(Serialize)]
struct RunBody<'a> {
    selection: &'a Selection,
}

#[derive(Serialize)]
struct ReplayBody {
    replayed_digest: String,
    identical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    divergence: Option<String>,
}

fn run_cmd(args: RunArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(path) = &args.replay {
        return replay(path, &args.out, out);
    }
    let path = args.scenario.as_deref().expect("clap requires a scenario");
    let scenario = load(path, args.rule)?;
    let validated = scenario.clone().validate()?;
    let selection = run(&validated)?;
    if let Some(csv) = &args.csv {
        write_file(csv, &ledger_csv(&validated, &selection))?;
    }
    let report = Report::new("run", RunBody { selection: &selection })
        .rule(validated.rule())
        .scenario(&scenario);
    emit(&args.out, &report.render(), out)?;
    Ok(EXIT_OK)
}

fn replay(path: &Path, out_args: &OutputArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let previous: RunReportIn = read_json(path)?;
    if previous.command != "run" {
        return Err(CliError::Usage(format!("{} is not a run report", path.display())));
    }
    let digest = scenario_digest(&previous.scenario);
    let mut divergence = None;
    if digest != previous.scenario_digest {
        divergence = Some(format!(
            "embedded scenario hashes to {digest}, report states {}",
            previous.scenario_digest
        ));
    } else if previous.scenario.policy.rule != previous.rule {
        divergence = Some("report rule differs from the embedded scenario".into());
    } else {
        let validated = previous.scenario.clone().validate()?;
        let selection = serde_json::to_value(run(&validated)?).expect("selection serializes");
        if selection != previous.selection {
            divergence = Some("re-run selection differs from the recorded one".into());
        }
    }
    let identical = divergence.is_none();
    let report = Report::<Scenario, _>::new(
        "replay",
        ReplayBody {
            replayed_digest: digest,
            identical,
            divergence,
        },
    )
    .rule(previous.rule);
    emit(out_args, &report.render(), out)?;
    Ok(if identical { EXIT_OK } else { EXIT_FOUND })
}

#[derive(Serialize)]
struct CheckBody<'a> {
    property: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<Horizon>,
    #[serde(skip_serializing_if = "Option::is_none")]
    selection: Option<&'a Selection>,
    verdict: &'a PropertyVerdict,
}

fn check_cmd(args: CheckArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let scenario = load(&args.scenario, args.rule)?;
    let validated = scenario.clone().validate()?;
    let rule = validated.rule();
    let (name, horizon, selection, verdict) = match args.property {
        Property::AggregationIndependence => {
            let mut opts = SplitOptions::default().with_budget(args.budget.unwrap_or(DEFAULT_COMPOSITION_BUDGET));
            if let Some(g) = args.granularity {
                opts = opts.with_granularity(g);
            }
            let verdict = check_aggregation_independence(&validated, rule, opts)?;
            ("aggregation-independence", None, None, verdict)
        }
        property => {
            let selection = run(&validated)?;
            let (name, horizon, verdict) = match property {
                Property::Fairness => ("fairness", None, check_fairness(&validated, &selection)),
                Property::MinorityRights => (
                    "minority-rights",
                    Some(args.horizon),
                    check_minority_rights(&validated, &selection, args.horizon),
                ),
                _ => (
                    "minority-fair",
                    Some(args.horizon),
                    check_minority_fair(&validated, &selection, args.horizon),
                ),
            };
            (name, horizon, Some(selection), verdict)
        }
    };
    let report = Report::new(
        "check",
        CheckBody {
            property: name,
            horizon,
            selection: selection.as_ref(),
            verdict: &verdict,
        },
    )
    .rule(rule)
    .scenario(&scenario);
    emit(&args.out, &report.render(), out)?;
    Ok(verdict_code(&verdict))
}

#[derive(Serialize)]
struct ManipulateBody<'a> {
    target: &'a str,
    total: usize,
    found: bool,
    composition: Option<Vec<usize>>,
}

fn manipulate_cmd(args: ManipulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let scenario = load(&args.scenario, args.rule)?;
    let validated = scenario.clone().validate()?;
    let total = args.total.unwrap_or_else(|| validated.total_hires());
    let opts = SplitOptions::default().with_budget(args.budget.unwrap_or(DEFAULT_COMPOSITION_BUDGET));
    let composition = find_manipulation(&validated, validated.rule(), &args.target, total, opts)?;
    let found = composition.is_some();
    let report = Report::new(
        "manipulate",
        ManipulateBody {
            target: &args.target,
            total,
            found,
            composition,
        },
    )
    .rule(validated.rule())
    .scenario(&scenario);
    emit(&args.out, &report.render(), out)?;
    Ok(if found { EXIT_OK } else { EXIT_FOUND })
}

#[derive(Serialize)]
struct UniqueSetBody {
    mode: &'static str,
    q: usize,
    set: Vec<WorkerId>,
    examined: u64,
}

#[derive(Serialize)]
struct EquivalenceBody<'a> {
    mode: &'static str,
    corpus: &'a str,
    seed: u64,
    trials: usize,
    max_workers: usize,
    passed: usize,
    failed: usize,
    first_failure: Option<&'a TrialRecord>,
}

#[derive(Serialize)]
struct TransformBody {
    mode: &'static str,
    examined: usize,
    orderings: Vec<Vec<WorkerId>>,
}

fn oracle_cmd(args: OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let need_scenario = || {
        args.scenario
            .as_deref()
            .ok_or_else(|| CliError::Usage("this mode needs a scenario file".into()))
    };
    match args.mode {
        OracleMode::UniqueSet => {
            let scenario = load(need_scenario()?, None)?;
            let validated = scenario.clone().validate()?;
            let q = args.q.unwrap_or_else(|| validated.total_hires());
            let found = unique_fair_set(validated.workers(), validated.m(), q)?;
            let body = UniqueSetBody {
                mode: "unique-set",
                q,
                set: found.set.into_iter().collect(),
                examined: found.examined,
            };
            let report = Report::new("oracle", body).scenario(&scenario);
            emit(&args.out, &report.render(), out)?;
            Ok(EXIT_OK)
        }
        OracleMode::Equivalence => {
            if args.scenario.is_some() {
                return Err(CliError::Usage("equivalence mode runs on a corpus, not a scenario".into()));
            }
            let corpus = args.corpus.as_deref().unwrap_or("default");
            if corpus != "default" {
                return Err(CliError::Usage(format!("unknown corpus `{corpus}`")));
            }
            let rule = args
                .rule
                .ok_or_else(|| CliError::Usage("equivalence mode needs --rule".into()))?;
            let spec = CorpusSpec::default()
                .with_seed(args.seed)
                .with_trials(args.trials)
                .with_max_workers(args.max_workers);
            let result = oracle_equivalence(rule, &spec)?;
            if let Some(path) = &args.records {
                write_file(path, &result.to_json_lines())?;
            }
            let body = EquivalenceBody {
                mode: "equivalence",
                corpus,
                seed: args.seed,
                trials: args.trials,
                max_workers: spec.max_workers,
                passed: result.passed,
                failed: result.failed,
                first_failure: result.first_failure(),
            };
            let report = Report::<Scenario, _>::new("oracle", body).rule(rule);
            emit(&args.out, &report.render(), out)?;
            Ok(if result.failed == 0 { EXIT_OK } else { EXIT_FOUND })
        }
        OracleMode::Transform => {
            let scenario = load(need_scenario()?, None)?;
            let validated = scenario.clone().validate()?;
            let result = transform_search(validated.workers(), validated.m(), &scenario.subpools)?;
            let found = !result.orderings.is_empty();
            let body = TransformBody {
                mode: "transform",
                examined: result.examined,
                orderings: result.orderings,
            };
            let report = Report::new("oracle", body).scenario(&scenario);
            emit(&args.out, &report.render(), out)?;
            Ok(if found { EXIT_OK } else { EXIT_FOUND })
        }
    }
}

#[derive(Serialize)]
struct PluralRunBody<'a> {
    matchings: &'a [Matching],
    hired_union: Vec<WorkerId>,
}

#[derive(Serialize)]
struct PluralCheckBody<'a> {
    check: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    institution: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<usize>,
    verdict: &'a PropertyVerdict,
}

fn plural_cmd(args: PluralArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let plural: PluralScenario = load_plural(&args.scenario)?;
    let rules = plural.rules()?;
    let Some(check) = args.check else {
        let history = apply_plural_sequence(&plural.workers, &rules, &plural.plural_sequence, None)?;
        let body = PluralRunBody {
            matchings: &history,
            hired_union: hired_union(&history).into_iter().collect(),
        };
        let report = Report::new("plural", body).scenario(&plural);
        emit(&args.out, &report.render(), out)?;
        return Ok(EXIT_OK);
    };
    let (name, institution, q, verdict) = match check {
        PluralCheck::PermutationIndependence => {
            let budget = args.budget.unwrap_or(DEFAULT_PERMUTATION_BUDGET);
            let v = check_permutation_independence(&plural.workers, &rules, &plural.plural_sequence, budget)?;
            ("permutation-independence", None, None, v)
        }
        PluralCheck::CommonTop => ("common-top", None, None, check_common_top(&plural.workers, &rules)?),
        PluralCheck::AggregationIndependence => {
            let institution = args
                .institution
                .as_deref()
                .ok_or_else(|| CliError::Usage("the aggregation check needs --institution".into()))?;
            let q = args
                .q
                .ok_or_else(|| CliError::Usage("the aggregation check needs --q".into()))?;
            let budget = args.budget.unwrap_or(DEFAULT_COMPOSITION_BUDGET);
            let v = check_multi_aggregation_independence(
                &plural.workers,
                &rules,
                &InstitutionId::new(institution),
                q,
                budget,
            )?;
            ("aggregation-independence", Some(institution), Some(q), v)
        }
    };
    let body = PluralCheckBody {
        check: name,
        institution,
        q,
        verdict: &verdict,
    };
    let report = Report::new("plural", body).scenario(&plural);
    emit(&args.out, &report.render(), out)?;
    Ok(verdict_code(&verdict))
}
