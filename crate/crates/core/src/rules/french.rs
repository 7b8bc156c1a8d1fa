use serde::{Deserialize, Serialize};

use crate::model::{ScoreProfile, Selection, ValidatedScenario};
use crate::rules::{ceil_mul, RoundState};

/// The two readings of the French disability quota.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrenchPolicy {
    /// The first round is a plain open competition; later rounds top up.
    P1,
    /// Every round, the first included, tops up.
    P2,
}

/// French assignment: open-pool hires are ranked by the open score, reserved
/// hires come from the disability pool ranked by the disability score. A
/// top-up round reserves `⌈m × Q_r⌉ − ω` slots, where `ω` counts every hire
/// so far who is a minority or applied to the disability competition.
///
/// Under P1 the very first round (no prior hires, round one) reserves
/// nothing. When the open pool runs dry the remaining slots are filled from
/// the disability pool.
pub fn run_french(scenario: &ValidatedScenario, policy: FrenchPolicy) -> Selection {
    french(scenario, scenario.sequence(), policy)
}

pub(crate) fn french(scenario: &ValidatedScenario, sequence: &[usize], policy: FrenchPolicy) -> Selection {
    let m = scenario.m();
    let mut state = RoundState::new(scenario);
    let mut cumulative = scenario.prior_count();
    for (r, &q) in sequence.iter().enumerate() {
        cumulative += q;
        let first_ever = r == 0 && scenario.prior_count() == 0;
        let quota = if policy == FrenchPolicy::P1 && first_ever {
            0
        } else {
            ceil_mul(m, cumulative)
                .saturating_sub(state.minority_count())
                .min(q)
        };
        let mut reserved = state.top(|w| w.in_disability_pool, ScoreProfile::Disability, quota);
        state.take(&reserved);
        let open = state.top(|w| w.in_open_pool, ScoreProfile::Open, q - reserved.len());
        state.take(&open);
        let short = q - reserved.len() - open.len();
        if short > 0 {
            let extra = state.top(|w| w.in_disability_pool, ScoreProfile::Disability, short);
            state.take(&extra);
            reserved.extend(extra);
        }
        state.record(q, quota, &reserved, &open);
    }
    state.finish(None)
}
