//! Fixed benchmark inputs, shared by the criterion suites.

use carowei::graph::{gnp, regular_bipartite};
use carowei::WeightedGraph;

/// Sparse random graph with average degree about `avg_degree`.
pub fn sparse_gnp(n: usize, avg_degree: f64, seed: u64) -> WeightedGraph {
    let p = (avg_degree / (n.max(2) - 1) as f64).min(1.0);
    WeightedGraph::unit(gnp(n, p, seed).expect("p is a probability"))
}

/// Regular bipartite graph with weights cycling through `1..=max_weight`.
pub fn weighted_regular(delta: usize, side: usize, max_weight: u64, seed: u64) -> WeightedGraph {
    let g = regular_bipartite(delta, side, seed).expect("delta <= side");
    let weights = (0..g.n() as u64).map(|v| v % max_weight + 1).collect();
    WeightedGraph::new(g, weights).expect("positive weights")
}
