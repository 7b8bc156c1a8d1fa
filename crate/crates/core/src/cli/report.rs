use serde::{Deserialize, Serialize};

use crate::model::{Rule, Scenario, ScoreProfile, Selection, ValidatedScenario};

/// Version of the report layout, bumped on incompatible changes.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub(crate) struct Report<'a, S: Serialize, B: Serialize> {
    pub format_version: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<Rule>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<&'a S>,
    #[serde(flatten)]
    pub body: B,
}

impl<'a, S: Serialize, B: Serialize> Report<'a, S, B> {
    pub fn new(command: &'static str, body: B) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command,
            rule: None,
            scenario_digest: None,
            scenario: None,
            body,
        }
    }

    pub fn rule(mut self, rule: Rule) -> Self {
        self.rule = Some(rule);
        self
    }

    pub fn scenario(mut self, scenario: &'a S) -> Self {
        self.scenario_digest = Some(crate::format::json_digest(scenario));
        self.scenario = Some(scenario);
        self
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// The parts of a run report that replay needs.
#[derive(Debug, Deserialize)]
pub(crate) struct RunReportIn {
    pub command: String,
    pub rule: Rule,
    pub scenario_digest: String,
    pub scenario: Scenario,
    pub selection: serde_json::Value,
}

/// One row per hire: round, phase, worker, score, minority.
pub(crate) fn ledger_csv(scenario: &ValidatedScenario, selection: &Selection) -> String {
    let rule = scenario.rule();
    let (reserved_label, open_label) = rule.phase_labels();
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["round", "phase", "worker", "score", "minority"])
        .expect("in-memory write");
    for round in &selection.ledger.rounds {
        let phases = [
            (reserved_label, &round.reserved_hires, ScoreProfile::Disability),
            (open_label, &round.open_hires, ScoreProfile::Open),
        ];
        for (label, hires, french_profile) in phases {
            for id in hires {
                let w = scenario.worker(scenario.index_of(id.as_str()).expect("hire is in the pool"));
                let score = if rule.is_french() { w.score_for(french_profile) } else { w.merit() };
                writer
                    .write_record([
                        round.round_index.to_string(),
                        label.to_owned(),
                        id.to_string(),
                        score.map(|s| s.to_string()).unwrap_or_default(),
                        w.is_minority().to_string(),
                    ])
                    .expect("in-memory write");
            }
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
