//! Exact maximum (weight) independent set for small graphs.

use super::{VertexSet, WeightedGraph};
use crate::algorithms::gwmin2;
use crate::{Error, Result};

/// Default vertex cap for [`exact_max_is`].
pub const ORACLE_LIMIT: usize = 40;

/// Largest graph [`brute_force_max_is`] accepts.
const BRUTE_FORCE_LIMIT: usize = 24;

/// Maximum-weight independent set by branch and bound, for `n <= 40`.
pub fn exact_max_is(wg: &WeightedGraph) -> Result<(VertexSet, u64)> {
    exact_max_is_with_limit(wg, ORACLE_LIMIT)
}

/// As [`exact_max_is`] with a custom vertex cap (at most 64).
pub fn exact_max_is_with_limit(wg: &WeightedGraph, limit: usize) -> Result<(VertexSet, u64)> {
    let n = wg.graph().n();
    if limit > 64 {
        return Err(Error::InvalidParameter(format!("oracle limit {limit} exceeds 64")));
    }
    if n > limit {
        return Err(Error::OracleLimit { n, limit });
    }
    let seed = gwmin2(wg);
    let mut solver = Solver {
        nbr: neighbour_masks(wg),
        w: wg.weights().to_vec(),
        best_w: wg.set_weight(&seed),
        best: seed.iter().fold(0, |acc, v| acc | bit(v)),
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    solver.search(all, 0, 0);
    Ok((mask_to_set(solver.best, n), solver.best_w))
}

/// Exhaustive enumeration of all `2^n` subsets (`n <= 24`). Independent of
/// the branch-and-bound code path; used to cross-check it.
pub fn brute_force_max_is(wg: &WeightedGraph) -> Result<(VertexSet, u64)> {
    let n = wg.graph().n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleLimit { n, limit: BRUTE_FORCE_LIMIT });
    }
    let nbr = neighbour_masks(wg);
    let size = 1usize << n;
    // independent[mask] is decided from mask minus its lowest vertex.
    let mut independent = vec![false; size];
    let mut weight = vec![0u64; size];
    independent[0] = true;
    let (mut best, mut best_w) = (0usize, 0u64);
    for mask in 1..size {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        independent[mask] = independent[rest] && nbr[v] & rest as u64 == 0;
        if independent[mask] {
            weight[mask] = weight[rest] + wg.weight(v);
            if weight[mask] > best_w {
                best_w = weight[mask];
                best = mask;
            }
        }
    }
    Ok((mask_to_set(best as u64, n), best_w))
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn neighbour_masks(wg: &WeightedGraph) -> Vec<u64> {
    let g = wg.graph();
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |acc, &u| acc | bit(u))).collect()
}

fn mask_to_set(mask: u64, n: usize) -> VertexSet {
    VertexSet::new(n, Bits(mask)).expect("mask bits are in range")
}

struct Bits(u64);

impl Iterator for Bits {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

struct Solver {
    nbr: Vec<u64>,
    w: Vec<u64>,
    best_w: u64,
    best: u64,
}

impl Solver {
    fn search(&mut self, mut cand: u64, mut cur: u64, mut cur_w: u64) {
        // Isolated candidates are always taken; a degree-1 candidate at least
        // as heavy as its only neighbour can replace that neighbour.
        loop {
            let mut changed = false;
            for v in Bits(cand) {
                if cand & bit(v) == 0 {
                    continue;
                }
                let live = self.nbr[v] & cand;
                let take = match live.count_ones() {
                    0 => true,
                    1 => self.w[v] >= self.w[live.trailing_zeros() as usize],
                    _ => false,
                };
                if take {
                    cur |= bit(v);
                    cur_w += self.w[v];
                    cand &= !(bit(v) | live);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        if cand == 0 {
            if cur_w > self.best_w {
                self.best_w = cur_w;
                self.best = cur;
            }
            return;
        }
        if cur_w + self.clique_cover_bound(cand) <= self.best_w {
            return;
        }

        let v = Bits(cand)
            .max_by_key(|&v| ((self.nbr[v] & cand).count_ones(), std::cmp::Reverse(v)))
            .expect("cand is non-empty");
        self.search(cand & !self.nbr[v] & !bit(v), cur | bit(v), cur_w + self.w[v]);
        self.search(cand & !bit(v), cur, cur_w);
    }

    /// Greedy partition of `cand` into cliques; an independent set takes at
    /// most one vertex from each, so the heaviest per clique sums to a bound.
    fn clique_cover_bound(&self, cand: u64) -> u64 {
        let mut rest = cand;
        let mut total = 0;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let mut clique = bit(v);
            let mut heaviest = self.w[v];
            let mut grow = rest & self.nbr[v];
            while grow != 0 {
                let u = grow.trailing_zeros() as usize;
                clique |= bit(u);
                heaviest = heaviest.max(self.w[u]);
                grow &= self.nbr[u];
            }
            rest &= !clique;
            total += heaviest;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique, cycle, petersen, turan_tight, weighted_complete_bipartite, Graph};

    fn unit(g: Graph) -> WeightedGraph {
        WeightedGraph::unit(g)
    }

    #[test]
    fn small_known_values() {
        assert_eq!(exact_max_is(&unit(cycle(4).unwrap())).unwrap().1, 2);
        assert_eq!(exact_max_is(&unit(clique(6))).unwrap().1, 1);
        assert_eq!(exact_max_is(&unit(petersen())).unwrap().1, 4);
        assert_eq!(exact_max_is(&unit(turan_tight(3, 1).unwrap().graph)).unwrap().1, 7);
    }

    #[test]
    fn knn_weighted_matches_enumeration() {
        let wg = weighted_complete_bipartite(3, 9).unwrap();
        let (set, value) = exact_max_is(&wg).unwrap();
        assert_eq!(value, 27);
        assert_eq!(set.as_slice(), &[3, 4, 5]);
        assert_eq!(brute_force_max_is(&wg).unwrap().1, 27);
    }

    #[test]
    fn limit_is_enforced() {
        let g = unit(Graph::empty(41));
        assert!(matches!(exact_max_is(&g), Err(Error::OracleLimit { n: 41, limit: 40 })));
        assert_eq!(exact_max_is_with_limit(&g, 64).unwrap().1, 41);
        assert!(brute_force_max_is(&unit(Graph::empty(25))).is_err());
    }

    #[test]
    fn empty_graph() {
        let (set, v) = exact_max_is(&unit(Graph::empty(0))).unwrap();
        assert!(set.is_empty());
        assert_eq!(v, 0);
    }
}
