//! Simple undirected graphs with dense `0..n` vertex ids.

mod generate;
pub mod io;
mod oracle;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::{Error, Result};

pub use generate::{
    clique, cycle, gnp, path, petersen, regular_bipartite, star, turan_tight,
    weighted_bipartite, weighted_complete_bipartite, TuranTight,
};
pub use oracle::{brute_force_max_is, exact_max_is, exact_max_is_with_limit, ORACLE_LIMIT};

/// Immutable simple undirected graph.
///
/// Adjacency lists are sorted and symmetric; there are no self-loops or
/// parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints, self-loops and
    /// duplicate edges (in either orientation).
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Self { adj, m: edges.len() })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Average degree `2m/n` as an exact rational (zero for the null graph).
    pub fn avg_degree(&self) -> BigRational {
        if self.n() == 0 {
            return BigRational::from_integer(BigInt::from(0));
        }
        BigRational::new(BigInt::from(2 * self.m), BigInt::from(self.n()))
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter().map(Vec::len)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Count of vertices per degree, indexed by degree.
    pub fn degree_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0; self.max_degree() + 1];
        for d in self.degrees() {
            hist[d] += 1;
        }
        hist
    }

    /// True iff no edge has both endpoints in `s`.
    pub fn is_independent(&self, s: &VertexSet) -> bool {
        self.find_conflict(s).is_none()
    }

    /// First edge inside `s`, if any.
    pub fn find_conflict(&self, s: &VertexSet) -> Option<(usize, usize)> {
        let mask = s.mask();
        s.iter().find_map(|u| {
            self.adj[u]
                .iter()
                .find(|&&v| v < mask.len() && mask[v])
                .map(|&v| (u.min(v), u.max(v)))
        })
    }

    pub fn degree_profile(&self, opt: Option<&VertexSet>) -> Result<DegreeProfile> {
        DegreeProfile::new(self, opt)
    }
}

/// A graph with a positive integer weight per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::WeightCount(weights.len(), graph.n()));
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(Error::ZeroWeight(v));
        }
        weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or(Error::WeightOverflow)?;
        Ok(Self { graph, weights })
    }

    /// Every vertex gets weight 1.
    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.n()];
        Self { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `w(N[v])`, the weight of the closed neighbourhood.
    pub fn closed_nbhd_weight(&self, v: usize) -> u64 {
        self.weights[v] + self.graph.neighbors(v).iter().map(|&u| self.weights[u]).sum::<u64>()
    }

    pub fn set_weight(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.weights[v]).sum()
    }
}

impl From<Graph> for WeightedGraph {
    fn from(graph: Graph) -> Self {
        Self::unit(graph)
    }
}

/// A set of vertex ids drawn from `0..universe`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexSet {
    members: Vec<usize>,
    universe: usize,
}

impl VertexSet {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(&vertex) = members.iter().find(|&&v| v >= universe) {
            return Err(Error::NotInUniverse { vertex, universe });
        }
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Self { members, universe })
    }

    pub fn empty(universe: usize) -> Self {
        Self { members: Vec::new(), universe }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        let members = mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect();
        Self { members, universe: mask.len() }
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn is_superset(&self, other: &VertexSet) -> bool {
        other.iter().all(|v| self.contains(v))
    }
}

/// Degree statistics of a graph, optionally split over an independent set.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    pub max_degree: usize,
    pub avg_degree: BigRational,
    /// `histogram[i]` = number of vertices of degree `i`.
    pub histogram: Vec<usize>,
    /// Number of vertices of each degree inside `opt`.
    pub opt_histogram: Option<BTreeMap<usize, usize>>,
    /// Edges with an endpoint in `opt`, i.e. `sum_i i * O_i`.
    pub m_opt: Option<usize>,
}

impl DegreeProfile {
    fn new(g: &Graph, opt: Option<&VertexSet>) -> Result<Self> {
        let (opt_histogram, m_opt) = match opt {
            Some(s) => {
                if s.universe() != g.n() {
                    if let Some(vertex) = s.iter().find(|&v| v >= g.n()) {
                        return Err(Error::NotInUniverse { vertex, universe: g.n() });
                    }
                }
                if let Some((u, v)) = g.find_conflict(s) {
                    return Err(Error::NotIndependent(u, v));
                }
                let mut hist = BTreeMap::new();
                for v in s.iter() {
                    *hist.entry(g.degree(v)).or_insert(0) += 1;
                }
                let m_opt = hist.iter().map(|(d, c)| d * c).sum();
                (Some(hist), Some(m_opt))
            }
            None => (None, None),
        };
        Ok(Self {
            max_degree: g.max_degree(),
            avg_degree: g.avg_degree(),
            histogram: g.degree_histogram(),
            opt_histogram,
            m_opt,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn path_and_cycle_degrees() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p3.degrees().collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(p3.m(), 2);
        let c = c4();
        assert!(c.degrees().all(|d| d == 2));
        assert_eq!(c.m(), 4);
    }

    #[test]
    fn malformed_edges_are_named() {
        assert!(matches!(Graph::new(2, &[(0, 0)]), Err(Error::SelfLoop(0))));
        assert!(matches!(
            Graph::new(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { u: 0, v: 3, n: 3 })
        ));
    }

    #[test]
    fn independence() {
        let c = c4();
        assert!(c.is_independent(&VertexSet::new(4, [0, 2]).unwrap()));
        assert!(!c.is_independent(&VertexSet::new(4, [0, 1]).unwrap()));
        assert!(c.is_independent(&VertexSet::empty(4)));
    }

    #[test]
    fn vertex_set_validation() {
        assert!(matches!(VertexSet::new(3, [0, 3]), Err(Error::NotInUniverse { vertex: 3, .. })));
        assert!(matches!(VertexSet::new(3, [1, 1]), Err(Error::DuplicateVertex(1))));
    }

    #[test]
    fn profile_of_path() {
        let p3 = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let prof = p3.degree_profile(None).unwrap();
        assert_eq!(prof.max_degree, 2);
        assert_eq!(prof.avg_degree, BigRational::new(4.into(), 3.into()));
        assert_eq!(prof.histogram, vec![0, 2, 1]);
    }

    #[test]
    fn profile_with_opt() {
        let opt = VertexSet::new(4, [0, 2]).unwrap();
        let prof = c4().degree_profile(Some(&opt)).unwrap();
        assert_eq!(prof.opt_histogram.unwrap().get(&2), Some(&2));
        assert_eq!(prof.m_opt, Some(4));
        let bad = VertexSet::new(4, [0, 1]).unwrap();
        assert!(matches!(c4().degree_profile(Some(&bad)), Err(Error::NotIndependent(0, 1))));
    }

    #[test]
    fn weights_are_validated() {
        let g = c4();
        assert!(matches!(WeightedGraph::new(g.clone(), vec![1, 2, 3]), Err(Error::WeightCount(3, 4))));
        assert!(matches!(WeightedGraph::new(g.clone(), vec![1, 0, 1, 1]), Err(Error::ZeroWeight(1))));
        assert!(matches!(
            WeightedGraph::new(g.clone(), vec![u64::MAX, 1, 1, 1]),
            Err(Error::WeightOverflow)
        ));
        let wg = WeightedGraph::new(g, vec![1, 2, 3, 4]).unwrap();
        assert_eq!(wg.closed_nbhd_weight(0), 1 + 2 + 4);
    }

    #[test]
    fn edges_sorted_and_half_adjacency() {
        let g = Graph::new(4, &[(3, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(g.degrees().sum::<usize>(), 2 * g.m());
    }
}
