//! Seeded Monte Carlo harness.
//!
//! Trial `i` draws from ChaCha8 seeded with `seed` on stream `i`, so results
//! do not depend on how trials are scheduled across threads. Per-trial values
//! are reduced in trial order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Algorithm;
use crate::graph::WeightedGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(trials)`.
    pub stderr: f64,
    pub trials: usize,
    pub target: Option<f64>,
}

impl MonteCarloEstimate {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let trials = samples.len();
        if trials < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 trials, got {trials}")));
        }
        let mean = samples.iter().sum::<f64>() / trials as f64;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
        Ok(Self { mean, stderr: (var / trials as f64).sqrt(), trials, target: None })
    }

    /// Estimate of a Bernoulli frequency from a success count.
    pub fn from_count(successes: u64, trials: usize) -> Result<Self> {
        if trials < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 trials, got {trials}")));
        }
        let t = trials as f64;
        let mean = successes as f64 / t;
        let var = (successes as f64 - t * mean * mean) / (t - 1.0);
        Ok(Self { mean, stderr: (var.max(0.0) / t).sqrt(), trials, target: None })
    }

    pub fn with_target(mut self, target: Option<f64>) -> Self {
        self.target = target;
        self
    }

    /// `|mean - value| <= k * stderr`.
    pub fn within(&self, value: f64, k: f64) -> bool {
        (self.mean - value).abs() <= k * self.stderr
    }
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Mean and standard error of `f` over `trials` independent streams.
pub fn estimate<F>(trials: usize, seed: u64, f: F) -> Result<MonteCarloEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    if trials < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 trials, got {trials}")));
    }
    let samples: Vec<f64> =
        (0..trials as u64).into_par_iter().map(|i| f(&mut trial_rng(seed, i))).collect();
    MonteCarloEstimate::from_samples(&samples)
}

/// Expected solution value of `alg` on `wg`, with the closed-form target
/// attached when one is known.
pub fn monte_carlo(
    alg: Algorithm,
    wg: &WeightedGraph,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    let est = estimate(trials, seed, |rng| wg.set_weight(&alg.run_with(wg, rng)) as f64)?;
    Ok(est.with_target(alg.expected_value(wg)))
}

/// Per-vertex selection frequencies of `alg` on `wg`.
pub fn inclusion_frequencies(
    alg: Algorithm,
    wg: &WeightedGraph,
    trials: usize,
    seed: u64,
) -> Result<Vec<MonteCarloEstimate>> {
    let n = wg.graph().n();
    let counts = (0..trials as u64)
        .into_par_iter()
        .fold(
            || vec![0u64; n],
            |mut acc, i| {
                for v in alg.run_with(wg, &mut trial_rng(seed, i)).iter() {
                    acc[v] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    counts.into_iter().map(|c| MonteCarloEstimate::from_count(c, trials)).collect()
}
