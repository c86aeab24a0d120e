//! Instance generators. Every seeded generator draws from a ChaCha8 stream
//! seeded with the given `u64`, so equal seeds give identical edge lists.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, WeightedGraph};
use crate::{Error, Result};

/// Uniform permutations tried per matching before falling back to an
/// augmenting-path matching in the complement.
const MATCHING_ATTEMPTS: usize = 1000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complete graph `K_k`.
pub fn clique(k: usize) -> Graph {
    let edges: Vec<_> = (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))).collect();
    Graph::new(k, &edges).expect("clique edges are simple")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges).expect("path edges are simple")
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::new(n, &edges)
}

/// Star `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::new(leaves + 1, &edges).expect("star edges are simple")
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges).expect("petersen edges are simple")
}

/// Random `delta`-regular bipartite graph with sides `0..side` and
/// `side..2*side`.
///
/// Built as a union of `delta` perfect matchings. Each matching is a uniform
/// random permutation, resampled while it reuses an edge of the earlier
/// matchings; if that keeps failing, a randomized augmenting-path matching in
/// the bipartite complement is used instead. The complement of a `k`-regular
/// bipartite graph with `k < side` is regular, hence has a perfect matching,
/// so construction succeeds for every `delta <= side`.
pub fn regular_bipartite(delta: usize, side: usize, seed: u64) -> Result<Graph> {
    if delta > side {
        return Err(Error::RegularBipartite { delta, side });
    }
    let mut rng = rng(seed);
    let mut right_of: Vec<Vec<usize>> = vec![Vec::with_capacity(delta); side];
    for _ in 0..delta {
        let perm = random_matching(&right_of, &mut rng)
            .unwrap_or_else(|| complement_matching(&right_of, &mut rng));
        for (l, r) in perm.into_iter().enumerate() {
            right_of[l].push(r);
        }
    }
    let edges: Vec<_> = right_of
        .iter()
        .enumerate()
        .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, side + r)))
        .collect();
    Graph::new(2 * side, &edges)
}

fn random_matching(right_of: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let mut perm: Vec<usize> = (0..right_of.len()).collect();
    for _ in 0..MATCHING_ATTEMPTS {
        perm.shuffle(rng);
        if perm.iter().zip(right_of).all(|(r, used)| !used.contains(r)) {
            return Some(perm);
        }
    }
    None
}

fn complement_matching(right_of: &[Vec<usize>], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let side = right_of.len();
    let mut order: Vec<usize> = (0..side).collect();
    order.shuffle(rng);
    let mut candidates: Vec<usize> = (0..side).collect();
    candidates.shuffle(rng);

    let mut match_right: Vec<Option<usize>> = vec![None; side];
    for &l in &order {
        let mut seen = vec![false; side];
        let found = augment(l, right_of, &candidates, &mut seen, &mut match_right);
        debug_assert!(found, "regular bipartite complement has a perfect matching");
    }
    let mut perm = vec![usize::MAX; side];
    for (r, l) in match_right.into_iter().enumerate() {
        perm[l.expect("perfect matching")] = r;
    }
    perm
}

fn augment(
    l: usize,
    right_of: &[Vec<usize>],
    candidates: &[usize],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &r in candidates {
        if seen[r] || right_of[l].contains(&r) {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(other) => augment(other, right_of, candidates, seen, match_right),
        };
        if free {
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// Turán-tight instance together with its known independence number.
#[derive(Debug, Clone)]
pub struct TuranTight {
    pub graph: Graph,
    pub alpha: usize,
}

/// `delta`-regular bipartite graph on two sides of `2*delta - 1` vertices plus
/// two isolated vertices. `n = 4 delta`, `m = (2 delta - 1) delta`,
/// `alpha = 2 delta + 1`.
pub fn turan_tight(delta: usize, seed: u64) -> Result<TuranTight> {
    if delta == 0 {
        return Err(Error::InvalidParameter("turan-tight needs delta >= 1".into()));
    }
    let side = 2 * delta - 1;
    let core = regular_bipartite(delta, side, seed)?;
    let edges: Vec<_> = core.edges().collect();
    let graph = Graph::new(2 * side + 2, &edges)?;
    Ok(TuranTight { graph, alpha: side + 2 })
}

/// Regular bipartite graph whose left side has weight `beta_den` and right
/// side weight `beta_num`, i.e. the integer scaling of weights `1` and
/// `beta = beta_num / beta_den`.
pub fn weighted_bipartite(
    delta: usize,
    side: usize,
    beta_num: u64,
    beta_den: u64,
    seed: u64,
) -> Result<WeightedGraph> {
    if beta_num == 0 || beta_num > beta_den {
        return Err(Error::InvalidParameter(format!(
            "beta = {beta_num}/{beta_den} must lie in (0, 1]"
        )));
    }
    let graph = regular_bipartite(delta, side, seed)?;
    let weights = (0..2 * side).map(|v| if v < side { beta_den } else { beta_num }).collect();
    WeightedGraph::new(graph, weights)
}

/// `K_{N,N}` with weight 1 on the left side and `q` on the right.
pub fn weighted_complete_bipartite(n_side: usize, q: u64) -> Result<WeightedGraph> {
    if n_side == 0 || q == 0 {
        return Err(Error::InvalidParameter("K_{N,N} needs N >= 1 and Q >= 1".into()));
    }
    let edges: Vec<_> =
        (0..n_side).flat_map(|l| (0..n_side).map(move |r| (l, n_side + r))).collect();
    let graph = Graph::new(2 * n_side, &edges)?;
    let weights = (0..2 * n_side).map(|v| if v < n_side { 1 } else { q }).collect();
    WeightedGraph::new(graph, weights)
}

/// Erdős–Rényi `G(n, p)`, sampled by geometric skipping over the pairs so the
/// cost is proportional to `n + m`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    if p == 0.0 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(clique(n));
    }
    let mut rng = rng(seed);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    // Pairs (v, w) with w < v, enumerated row by row.
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.gen();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + skip as i64;
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::new(n, &edges)
}
