use crate::model::{Gender, ScoreProfile, Selection, ValidatedScenario};
use crate::rules::RoundState;

/// Gender-balanced rule: each round hires `q_r / 2` of the best remaining
/// women and `q_r / 2` of the best remaining men. Slots a depleted gender
/// cannot fill go to the best remaining workers overall.
///
/// Ledger phases: `reserved_hires` are the female picks, `open_hires` the
/// male picks followed by any fallback hires.
pub fn run_nsw(scenario: &ValidatedScenario) -> Selection {
    nsw(scenario, scenario.sequence())
}

pub(crate) fn nsw(scenario: &ValidatedScenario, sequence: &[usize]) -> Selection {
    let mut state = RoundState::new(scenario);
    for &q in sequence {
        let half = q / 2;
        let female = state.top(|w| w.gender == Some(Gender::F), ScoreProfile::Main, half);
        state.take(&female);
        let mut rest = state.top(|w| w.gender == Some(Gender::M), ScoreProfile::Main, half);
        state.take(&rest);
        let fallback = state.top(|_| true, ScoreProfile::Main, q - female.len() - rest.len());
        state.take(&fallback);
        rest.extend(fallback);
        state.record(q, half, &female, &rest);
    }
    state.finish(None)
}
