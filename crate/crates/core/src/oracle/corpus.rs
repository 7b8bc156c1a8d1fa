use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Policy, Rational, Rule, Scenario, Worker};
use crate::rules::ceil_mul;

/// The minority ratios the random corpus draws from.
pub const DEFAULT_RATIOS: [(i64, i64); 6] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1)];

/// Parameters of a reproducible random corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub seed: u64,
    pub trials: usize,
    /// Pools have between 1 and this many workers.
    pub max_workers: usize,
    pub ratios: Vec<Rational>,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 1000,
            max_workers: 12,
            ratios: DEFAULT_RATIOS.iter().map(|&(n, d)| Rational::new(n, d)).collect(),
        }
    }
}

impl CorpusSpec {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_max_workers(mut self, max_workers: usize) -> Self {
        self.max_workers = max_workers.max(1);
        self
    }

    pub fn with_ratios(mut self, ratios: Vec<Rational>) -> Self {
        self.ratios = ratios;
        self
    }
}

/// Trial `trial` of the corpus: distinct integer scores drawn without
/// replacement, minority status by coin flip, a ratio from `spec.ratios` and a
/// random split of a random total. Enough minorities are guaranteed for the
/// ratio to be met at every prefix.
///
/// Each trial uses its own generator stream, so any trial can be rebuilt
/// from `(seed, trial)` alone. The policy rule is a placeholder.
pub fn generate_instance(spec: &CorpusSpec, trial: usize) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(trial as u64);

    let n = rng.gen_range(1..=spec.max_workers.max(1));
    let scores = sample(&mut rng, 100, n);
    let mut workers: Vec<Worker> = scores
        .iter()
        .enumerate()
        .map(|(i, s)| Worker::new(format!("w{:02}", i + 1), s as i64 + 1).minority(rng.gen_bool(0.5)))
        .collect();
    let m = if spec.ratios.is_empty() {
        Rational::from_integer(0)
    } else {
        spec.ratios[rng.gen_range(0..spec.ratios.len())]
    };

    let total = rng.gen_range(1..=n);
    let mut sequence = Vec::new();
    let mut run = 0;
    for unit in 1..=total {
        run += 1;
        if unit == total || rng.gen_bool(0.5) {
            sequence.push(run);
            run = 0;
        }
    }

    let need = ceil_mul(m, total);
    let mut have = workers.iter().filter(|w| w.minority).count();
    while have < need {
        let candidates: Vec<usize> = (0..n).filter(|&i| !workers[i].minority).collect();
        let pick = candidates[rng.gen_range(0..candidates.len())];
        workers[pick].minority = true;
        have += 1;
    }
    Scenario::new(workers, Policy::new(Rule::Sp, m), sequence)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trials_are_reproducible_and_sufficient() {
        let spec = CorpusSpec::default().with_seed(7);
        for t in 0..200 {
            let a = generate_instance(&spec, t);
            assert_eq!(a, generate_instance(&spec, t));
            let total: usize = a.sequence.iter().sum();
            let minorities = a.workers.iter().filter(|w| w.minority).count();
            assert!(ceil_mul(a.policy.m, total) <= minorities);
            assert!(total <= a.workers.len());
            assert!(a.validate().is_ok());
        }
        assert_ne!(generate_instance(&spec, 0), generate_instance(&spec, 1));
    }
}
