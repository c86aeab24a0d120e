//! Deterministic greedy baselines. Ties go to the lowest vertex id.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeSet;

use crate::graph::{Graph, VertexSet, WeightedGraph};

/// Repeatedly take a minimum-degree vertex of the remaining graph and delete
/// its closed neighbourhood.
pub fn greedy_min_degree(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut deg: Vec<usize> = g.degrees().collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut chosen = vec![false; n];

    while let Some((_, v)) = queue.pop_first() {
        chosen[v] = true;
        alive[v] = false;
        let dropped: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| alive[u]).collect();
        for &u in &dropped {
            alive[u] = false;
            queue.remove(&(deg[u], u));
        }
        for &u in &dropped {
            for &w in g.neighbors(u) {
                if alive[w] {
                    queue.remove(&(deg[w], w));
                    deg[w] -= 1;
                    queue.insert((deg[w], w));
                }
            }
        }
    }
    VertexSet::from_mask(&chosen)
}

/// Repeatedly delete a maximum-degree vertex until no edges remain; the
/// survivors form the solution.
pub fn greedy_max_degree_removal(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut deg: Vec<usize> = g.degrees().collect();
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<(usize, Reverse<usize>)> = (0..n).map(|v| (deg[v], Reverse(v))).collect();

    while let Some(&(d, Reverse(v))) = queue.last() {
        if d == 0 {
            break;
        }
        queue.pop_last();
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                queue.remove(&(deg[u], Reverse(u)));
                deg[u] -= 1;
                queue.insert((deg[u], Reverse(u)));
            }
        }
    }
    VertexSet::from_mask(&alive)
}

/// Priority of a vertex in GWMIN2: `weight / nbhd` compared exactly, then
/// lower id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct RatioKey {
    weight: u64,
    nbhd: u64,
    v: usize,
}

impl Ord for RatioKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.weight as u128 * other.nbhd as u128;
        let rhs = other.weight as u128 * self.nbhd as u128;
        lhs.cmp(&rhs).then_with(|| other.v.cmp(&self.v))
    }
}

impl PartialOrd for RatioKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// GWMIN2: take the vertex maximising `w(v) / w(N[v])` in the remaining
/// graph, delete its closed neighbourhood, repeat.
pub fn gwmin2(wg: &WeightedGraph) -> VertexSet {
    let g = wg.graph();
    let n = g.n();
    let mut nbhd: Vec<u64> = (0..n).map(|v| wg.closed_nbhd_weight(v)).collect();
    let key = |v: usize, nbhd: &[u64]| RatioKey { weight: wg.weight(v), nbhd: nbhd[v], v };
    let mut alive = vec![true; n];
    let mut queue: BTreeSet<RatioKey> = (0..n).map(|v| key(v, &nbhd)).collect();
    let mut chosen = vec![false; n];

    while let Some(top) = queue.pop_last() {
        let v = top.v;
        chosen[v] = true;
        alive[v] = false;
        let mut dropped = vec![v];
        for &u in g.neighbors(v) {
            if alive[u] {
                alive[u] = false;
                queue.remove(&key(u, &nbhd));
                dropped.push(u);
            }
        }
        for &u in &dropped {
            for &w in g.neighbors(u) {
                if alive[w] {
                    queue.remove(&key(w, &nbhd));
                    nbhd[w] -= wg.weight(u);
                    queue.insert(key(w, &nbhd));
                }
            }
        }
    }
    VertexSet::from_mask(&chosen)
}
