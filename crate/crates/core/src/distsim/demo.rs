use serde::Serialize;

use super::round::{run_round, RoundConfig};
use crate::algorithms::{estimate, RankAssignment, RankMode};
use crate::graph::{clique, regular_bipartite, Graph};
use crate::{MonteCarloEstimate, Result};

/// What one-round nodes observe on one instance, and what they achieve.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceViews {
    pub name: String,
    pub n: usize,
    pub alpha: usize,
    /// Smallest and largest inbox size over all nodes.
    pub view_degree: (usize, usize),
    /// Fraction of nodes joining, averaged over trials.
    pub join_rate: f64,
    pub solution: MonteCarloEstimate,
    /// `alpha / mean solution size`.
    pub ratio: f64,
}

/// `K_{delta+1}` next to a `delta`-regular bipartite graph with sides of
/// `delta + 1`: every node sees `delta` neighbours with i.i.d. keys in both.
#[derive(Debug, Clone, Serialize)]
pub struct IndistReport {
    pub delta: usize,
    pub seed: u64,
    pub clique: InstanceViews,
    pub bipartite: InstanceViews,
}

fn observe(name: &str, g: &Graph, alpha: usize, trials: usize, seed: u64) -> Result<InstanceViews> {
    let n = g.n();
    let ranks = RankAssignment::sample(n, RankMode::Unweighted, None, seed)?;
    let (_, _, views) = run_round(g, None, &ranks, RoundConfig::default())?;
    let lo = views.iter().map(|v| v.inbox.len()).min().unwrap_or(0);
    let hi = views.iter().map(|v| v.inbox.len()).max().unwrap_or(0);

    let solution = estimate(trials, seed, |rng| {
        let ranks = RankAssignment::sample_with(rng, n, RankMode::Unweighted, None)
            .expect("unweighted ranks");
        run_round(g, None, &ranks, RoundConfig::default()).expect("default budget fits").0.len() as f64
    })?
    .with_target(Some(n as f64 / (g.max_degree() + 1) as f64));
    Ok(InstanceViews {
        name: name.to_string(),
        n,
        alpha,
        view_degree: (lo, hi),
        join_rate: solution.mean / n as f64,
        ratio: alpha as f64 / solution.mean,
        solution,
    })
}

pub fn indistinguishability_demo(delta: usize, trials: usize, seed: u64) -> Result<IndistReport> {
    if delta == 0 {
        return Err(crate::Error::InvalidParameter("delta must be at least 1".into()));
    }
    let k = clique(delta + 1);
    let b = regular_bipartite(delta, delta + 1, seed)?;
    Ok(IndistReport {
        delta,
        seed,
        clique: observe("clique", &k, 1, trials, seed)?,
        bipartite: observe("regular-bipartite", &b, delta + 1, trials, seed)?,
    })
}
