use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::format::{read_json, FormatError};
use crate::model::{Worker, WorkerId};

use super::{
    engine::check_pool, Institution, InstitutionalRule, MultiError, PluralSequence, PolicyRule,
    PriorityRule, RuleMap,
};

/// A pool, the institutions hiring from it and the order in which they hire.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PluralScenario {
    pub workers: Vec<Worker>,
    pub institutions: Vec<Institution>,
    #[serde(default)]
    pub plural_sequence: PluralSequence,
    /// Shared ranking, best first, used by institutions without a policy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranking: Option<Vec<WorkerId>>,
}

impl PluralScenario {
    /// One rule per institution: its policy if it has one, the shared
    /// ranking otherwise.
    pub fn rules(&self) -> Result<RuleMap, MultiError> {
        check_pool(&self.workers)?;
        let priority = self
            .ranking
            .clone()
            .map(|r| PriorityRule::new(&self.workers, r))
            .transpose()?;
        let mut seen = HashSet::new();
        let mut rules = RuleMap::new();
        for inst in &self.institutions {
            if !seen.insert(&inst.id) {
                return Err(MultiError::DuplicateInstitution(inst.id.clone()));
            }
            let rule: Box<dyn InstitutionalRule> = match (&inst.policy, &priority) {
                (Some(policy), _) => Box::new(PolicyRule::new(policy.clone())),
                (None, Some(p)) => Box::new(p.clone()),
                (None, None) => return Err(MultiError::MissingRule(inst.id.clone())),
            };
            rules.insert(inst.id.clone(), rule);
        }
        Ok(rules)
    }
}

pub fn parse_plural(text: &str) -> Result<PluralScenario, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn load_plural(path: &Path) -> Result<PluralScenario, FormatError> {
    read_json(path)
}
