use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::model::{Policy, Rule, Scenario, Worker, WorkerId};
use crate::rules::run;

use super::{InstitutionId, Matching, MultiError, PluralStep};

/// What an institution may see when it hires: the pool, the unmatched
/// workers and its own past hires. Other institutions' hires are opaque.
#[derive(Clone, Debug)]
pub struct InstitutionView<'a> {
    pool: &'a [Worker],
    institution: &'a InstitutionId,
    unmatched: Vec<usize>,
    own: Vec<usize>,
}

impl<'a> InstitutionView<'a> {
    pub fn new(pool: &'a [Worker], institution: &'a InstitutionId, matching: &Matching) -> Self {
        let position = |id: &WorkerId| pool.iter().position(|w| &w.id == id);
        let unmatched = (0..pool.len()).filter(|&i| !matching.is_matched(pool[i].id.as_str())).collect();
        let own = matching.hires_of(institution).iter().filter_map(position).collect();
        Self {
            pool,
            institution,
            unmatched,
            own,
        }
    }

    pub fn pool(&self) -> &'a [Worker] {
        self.pool
    }

    pub fn institution(&self) -> &'a InstitutionId {
        self.institution
    }

    pub fn unmatched(&self) -> impl Iterator<Item = &'a Worker> + '_ {
        self.unmatched.iter().map(|&i| &self.pool[i])
    }

    /// Own hires in hiring order.
    pub fn own_hires(&self) -> impl Iterator<Item = &'a Worker> + '_ {
        self.own.iter().map(|&i| &self.pool[i])
    }

    pub fn unmatched_count(&self) -> usize {
        self.unmatched.len()
    }

    /// Whether this view addresses the institution named in `step`.
    pub fn is_for(&self, step: &PluralStep) -> bool {
        &step.institution == self.institution
    }
}

/// A per-institution hiring procedure.
///
/// Implementations must hire only unmatched workers, hire nobody when the
/// step names another institution, and depend on the matching only through
/// the view.
pub trait InstitutionalRule: Send + Sync {
    fn hire(&self, view: &InstitutionView<'_>, step: &PluralStep) -> Result<Vec<WorkerId>, MultiError>;

    /// Every hire count this rule accepts is a multiple of this.
    fn granularity(&self) -> usize {
        1
    }
}

pub type RuleMap = BTreeMap<InstitutionId, Box<dyn InstitutionalRule>>;

/// A single-institution policy run on the unmatched workers, with the
/// institution's own past hires as prior hires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolicyRule {
    pub policy: Policy,
}

impl PolicyRule {
    pub fn new(policy: Policy) -> Self {
        Self { policy }
    }
}

impl InstitutionalRule for PolicyRule {
    fn hire(&self, view: &InstitutionView<'_>, step: &PluralStep) -> Result<Vec<WorkerId>, MultiError> {
        if !view.is_for(step) || step.count == 0 {
            return Ok(Vec::new());
        }
        let own: Vec<WorkerId> = view.own_hires().map(|w| w.id.clone()).collect();
        let keep: HashSet<&WorkerId> = own.iter().chain(view.unmatched().map(|w| &w.id)).collect();
        let workers: Vec<Worker> = view.pool().iter().filter(|w| keep.contains(&w.id)).cloned().collect();
        let mut policy = self.policy.clone();
        // The partition size of the Brazilian rule cannot exceed what is left.
        policy.k = policy.k.map(|k| k.min(workers.len()));
        let scenario = Scenario::new(workers, policy, vec![step.count])
            .with_prior_hires(own)
            .validate()?;
        Ok(run(&scenario)?.hired)
    }

    fn granularity(&self) -> usize {
        if self.policy.rule == Rule::Nsw {
            2
        } else {
            1
        }
    }
}

/// Hires the best unmatched workers under a fixed strict ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PriorityRule {
    ranking: Arc<Vec<WorkerId>>,
}

impl PriorityRule {
    /// `ranking` lists workers best first and must cover the pool exactly.
    pub fn new(pool: &[Worker], ranking: Vec<WorkerId>) -> Result<Self, MultiError> {
        let listed: HashSet<&WorkerId> = ranking.iter().collect();
        if listed.len() != ranking.len() {
            return Err(MultiError::InvalidRanking("a worker is listed twice".into()));
        }
        if let Some(w) = pool.iter().find(|w| !listed.contains(&w.id)) {
            return Err(MultiError::InvalidRanking(format!("{} is not ranked", w.id)));
        }
        if ranking.len() != pool.len() {
            return Err(MultiError::InvalidRanking("ranking names workers outside the pool".into()));
        }
        Ok(Self {
            ranking: Arc::new(ranking),
        })
    }

    pub fn ranking(&self) -> &[WorkerId] {
        &self.ranking
    }
}

impl InstitutionalRule for PriorityRule {
    fn hire(&self, view: &InstitutionView<'_>, step: &PluralStep) -> Result<Vec<WorkerId>, MultiError> {
        if !view.is_for(step) {
            return Ok(Vec::new());
        }
        let unmatched: HashSet<&WorkerId> = view.unmatched().map(|w| &w.id).collect();
        Ok(self
            .ranking
            .iter()
            .filter(|id| unmatched.contains(id))
            .take(step.count)
            .cloned()
            .collect())
    }
}

/// The same priority rule for every institution.
pub fn single_priority_rule<'a>(
    pool: &[Worker],
    ranking: Vec<WorkerId>,
    institutions: impl IntoIterator<Item = &'a InstitutionId>,
) -> Result<RuleMap, MultiError> {
    let rule = PriorityRule::new(pool, ranking)?;
    Ok(institutions
        .into_iter()
        .map(|i| (i.clone(), Box::new(rule.clone()) as Box<dyn InstitutionalRule>))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Rational;

    fn pool() -> Vec<Worker> {
        [100, 90, 80, 50, 20]
            .iter()
            .enumerate()
            .map(|(i, &s)| Worker::new(format!("w{}", i + 1), s).minority(matches!(i, 0 | 1 | 4)))
            .collect()
    }

    #[test]
    fn view_hides_other_institutions() {
        let pool = pool();
        let (a, b) = (InstitutionId::from("i1"), InstitutionId::from("i2"));
        let mut m = Matching::new([&a, &b]);
        m.assign("w1".into(), a.clone()).unwrap();
        m.assign("w2".into(), b.clone()).unwrap();
        let view = InstitutionView::new(&pool, &a, &m);
        assert_eq!(view.unmatched_count(), 3);
        let own: Vec<_> = view.own_hires().map(|w| w.id.as_str()).collect();
        assert_eq!(own, ["w1"]);
    }

    #[test]
    fn policy_rule_counts_own_hires() {
        let pool = pool();
        let i1 = InstitutionId::from("i1");
        let mut m = Matching::new([&i1]);
        m.assign("w1".into(), i1.clone()).unwrap();
        m.assign("w2".into(), "i2".into()).unwrap();
        let rule = PolicyRule::new(Policy::new(Rule::Sa, Rational::new(1, 2)));
        let view = InstitutionView::new(&pool, &i1, &m);
        let hires = rule.hire(&view, &PluralStep::new("i1", 1)).unwrap();
        // One own minority already covers ⌈1/2 × 2⌉.
        assert_eq!(hires, vec![WorkerId::from("w3")]);
        assert!(rule.hire(&view, &PluralStep::new("i2", 1)).unwrap().is_empty());
    }

    #[test]
    fn priority_rule_validates_ranking() {
        let pool = pool();
        let ids = |v: &[&str]| v.iter().map(|s| WorkerId::from(*s)).collect::<Vec<_>>();
        assert!(PriorityRule::new(&pool, ids(&["w1", "w2", "w3", "w4"])).is_err());
        assert!(PriorityRule::new(&pool, ids(&["w1", "w1", "w2", "w3", "w4"])).is_err());
        let r = PriorityRule::new(&pool, ids(&["w5", "w4", "w3", "w2", "w1"])).unwrap();
        let i = InstitutionId::from("i");
        let m = Matching::new([&i]);
        let hires = r.hire(&InstitutionView::new(&pool, &i, &m), &PluralStep::new("i", 2)).unwrap();
        assert_eq!(hires, ids(&["w5", "w4"]));
    }
}
