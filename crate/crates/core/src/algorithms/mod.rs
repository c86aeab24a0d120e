//! Solution-producing procedures.

mod greedy;
mod montecarlo;
mod ranks;
mod rules;

use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::bounds;
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::{Error, Result};

pub use greedy::{greedy_max_degree_removal, greedy_min_degree, gwmin2};
pub use montecarlo::{estimate, inclusion_frequencies, monte_carlo, trial_rng, MonteCarloEstimate};
pub use ranks::{beats, unit_interval, weighted_key, RankAssignment, RankMode};
pub use rules::{boppana, max_alg, max_alg_delta1_fix, selkow_two_round};

/// Stable algorithm tags used on the command line and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Boppana,
    Max,
    Selkow,
    GreedyMin,
    GreedyMax,
    Gwmin2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Boppana,
        Algorithm::Max,
        Algorithm::Selkow,
        Algorithm::GreedyMin,
        Algorithm::GreedyMax,
        Algorithm::Gwmin2,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Boppana => "boppana",
            Algorithm::Max => "max",
            Algorithm::Selkow => "selkow",
            Algorithm::GreedyMin => "greedy-min",
            Algorithm::GreedyMax => "greedy-max",
            Algorithm::Gwmin2 => "gwmin2",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::Boppana | Algorithm::Max | Algorithm::Selkow)
    }

    /// Runs once, drawing ranks from `rng` if the algorithm is randomized.
    pub fn run_with<R: RngCore>(self, wg: &WeightedGraph, rng: &mut R) -> VertexSet {
        let g = wg.graph();
        let n = g.n();
        match self {
            Algorithm::Boppana | Algorithm::Selkow => {
                let ranks = RankAssignment::sample_with(rng, n, RankMode::Unweighted, None)
                    .expect("unweighted ranks need no weights");
                if self == Algorithm::Boppana {
                    boppana(g, &ranks)
                } else {
                    selkow_two_round(g, &ranks)
                }
            }
            Algorithm::Max => {
                let ranks = RankAssignment::sample_with(rng, n, RankMode::Weighted, Some(wg.weights()))
                    .expect("weights match the graph");
                boppana(g, &ranks)
            }
            Algorithm::GreedyMin => greedy_min_degree(g),
            Algorithm::GreedyMax => greedy_max_degree_removal(g),
            Algorithm::Gwmin2 => gwmin2(wg),
        }
    }

    pub fn run(self, wg: &WeightedGraph, seed: u64) -> RunResult {
        let solution = self.run_with(wg, &mut ChaCha8Rng::seed_from_u64(seed));
        RunResult { value: wg.set_weight(&solution), solution, seed, algorithm: self }
    }

    /// Exact expected value where a closed form is known.
    pub fn expected_value(self, wg: &WeightedGraph) -> Option<f64> {
        match self {
            Algorithm::Boppana => Some(expected_boppana_weight(wg)),
            Algorithm::Max => Some(bounds::weighted_nbhd_bound(wg)),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

impl Serialize for Algorithm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

/// Outcome of a single run.
#[derive(Debug, Clone, Serialize)]
pub struct RunResult {
    pub solution: VertexSet,
    /// `w(solution)`; the size for unit weights.
    pub value: u64,
    pub seed: u64,
    pub algorithm: Algorithm,
}

/// `E[|B|]` for the uniform-order rule, which is exactly the Caro-Wei bound.
pub fn expected_boppana_size(g: &Graph) -> f64 {
    bounds::caro_wei(g)
}

/// `E[w(B)] = sum_v w(v) / (d(v) + 1)` for the uniform-order rule on a
/// weighted graph.
pub fn expected_boppana_weight(wg: &WeightedGraph) -> f64 {
    let g = wg.graph();
    (0..g.n()).map(|v| wg.weight(v) as f64 / (g.degree(v) + 1) as f64).sum()
}
