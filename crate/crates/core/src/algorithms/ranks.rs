//! Random ranks realising the uniform permutation and the weight-tilted order.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    /// Uniform random total order.
    Unweighted,
    /// Order of `x_v^(1/w_v)` for independent uniform `x_v`.
    Weighted,
}

/// Map an `f64` to a `u64` with the same total order.
fn order_bits(x: f64) -> u64 {
    let bits = x.to_bits();
    if bits >> 63 == 1 {
        !bits
    } else {
        bits | (1 << 63)
    }
}

/// Uniform real in the open interval `(0, 1)` from the top 53 bits of `draw`.
pub fn unit_interval(draw: u64) -> f64 {
    ((draw >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// Key of a weighted vertex: `ln(x) / w`, which orders vertices exactly as
/// `x^(1/w)` does without underflowing for large weights.
pub fn weighted_key(draw: u64, weight: u64) -> u64 {
    order_bits(unit_interval(draw).ln() / weight as f64)
}

/// One comparable key per vertex. Vertex `u` ranks above `v` when its key is
/// larger; equal keys are resolved in favour of the lower id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssignment {
    draws: Vec<u64>,
    keys: Vec<u64>,
    mode: RankMode,
}

impl RankAssignment {
    /// Draws ranks from a ChaCha8 stream seeded with `seed`.
    pub fn sample(n: usize, mode: RankMode, weights: Option<&[u64]>, seed: u64) -> Result<Self> {
        Self::sample_with(&mut ChaCha8Rng::seed_from_u64(seed), n, mode, weights)
    }

    pub fn sample_with<R: RngCore>(
        rng: &mut R,
        n: usize,
        mode: RankMode,
        weights: Option<&[u64]>,
    ) -> Result<Self> {
        let draws = (0..n).map(|_| rng.gen::<u64>()).collect();
        Self::from_draws(draws, mode, weights)
    }

    /// Ranks from explicit 64-bit draws (the values a node would broadcast).
    pub fn from_draws(draws: Vec<u64>, mode: RankMode, weights: Option<&[u64]>) -> Result<Self> {
        let keys = match mode {
            RankMode::Unweighted => draws.clone(),
            RankMode::Weighted => {
                let weights = weights.ok_or(Error::MissingWeights)?;
                if weights.len() != draws.len() {
                    return Err(Error::MissingWeights);
                }
                draws.iter().zip(weights).map(|(&d, &w)| weighted_key(d, w)).collect()
            }
        };
        Ok(Self { draws, keys, mode })
    }

    /// Unweighted ranks with the given keys, e.g. `[1, 5, 2]`.
    pub fn from_keys(keys: Vec<u64>) -> Self {
        Self { draws: keys.clone(), keys, mode: RankMode::Unweighted }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn mode(&self) -> RankMode {
        self.mode
    }

    pub fn key(&self, v: usize) -> u64 {
        self.keys[v]
    }

    pub fn draw(&self, v: usize) -> u64 {
        self.draws[v]
    }

    pub fn keys(&self) -> &[u64] {
        &self.keys
    }

    /// True when `u` ranks strictly above `v`.
    pub fn beats(&self, u: usize, v: usize) -> bool {
        beats(self.keys[u], u, self.keys[v], v)
    }

    /// True when `v` ranks above every neighbour.
    pub fn is_local_max(&self, g: &Graph, v: usize) -> bool {
        g.neighbors(v).iter().all(|&u| self.beats(v, u))
    }
}

/// Rank comparison on raw `(key, id)` pairs.
pub fn beats(key_u: u64, u: usize, key_v: u64, v: usize) -> bool {
    key_u > key_v || (key_u == key_v && u < v)
}
