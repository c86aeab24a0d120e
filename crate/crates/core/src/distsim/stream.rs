use serde::Serialize;

use crate::algorithms::{RankAssignment, RankMode};
use crate::graph::VertexSet;
use crate::{Error, Result};

/// Single-pass state: the ranks and one candidate bit per vertex. No edges
/// are retained.
#[derive(Debug, Clone)]
pub struct StreamState {
    alive: Vec<u64>,
    ranks: RankAssignment,
    edges_processed: u64,
}

impl StreamState {
    pub fn new(ranks: RankAssignment) -> Self {
        let n = ranks.len();
        let mut alive = vec![u64::MAX; n.div_ceil(64)];
        if !n.is_multiple_of(64) {
            if let Some(last) = alive.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        Self { alive, ranks, edges_processed: 0 }
    }

    pub fn n(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn edges_processed(&self) -> u64 {
        self.edges_processed
    }

    pub fn ranks(&self) -> &RankAssignment {
        &self.ranks
    }

    /// Bytes held by the state: the bit-vector plus draws and keys.
    pub fn state_bytes(&self) -> usize {
        self.alive.len() * 8 + self.ranks.len() * 16
    }

    /// Applies one edge: the lower-ranked endpoint loses its candidacy.
    /// Returns the evicted vertex if it was still a candidate.
    pub fn process_edge(&mut self, u: usize, v: usize) -> Result<Option<usize>> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::VertexOutOfRange { u, v, n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.edges_processed += 1;
        let loser = if self.ranks.beats(u, v) { v } else { u };
        if self.is_alive(loser) {
            self.alive[loser / 64] &= !(1u64 << (loser % 64));
            Ok(Some(loser))
        } else {
            Ok(None)
        }
    }

    pub fn current_set(&self) -> VertexSet {
        let mask: Vec<bool> = (0..self.n()).map(|v| self.is_alive(v)).collect();
        VertexSet::from_mask(&mask)
    }
}

/// Processes `edges` in the given order and returns the surviving candidates.
pub fn stream_run<I>(ranks: &RankAssignment, edges: I) -> Result<VertexSet>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    stream_run_fallible(ranks, edges.into_iter().map(Ok)).map(|state| state.current_set())
}

/// As [`stream_run`] over a fallible edge source such as
/// [`crate::graph::io::EdgeReader`]; returns the final state.
pub fn stream_run_fallible<I>(ranks: &RankAssignment, edges: I) -> Result<StreamState>
where
    I: IntoIterator<Item = Result<(usize, usize)>>,
{
    let mut state = StreamState::new(ranks.clone());
    for edge in edges {
        let (u, v) = edge?;
        state.process_edge(u, v)?;
    }
    Ok(state)
}

/// Outcome of one edge insertion, serialised as
/// `{"edge":[u,v],"evicted":k|null}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Eviction {
    pub edge: [usize; 2],
    pub evicted: Option<usize>,
}

/// Preemptive online maintenance of the solution under edge insertions.
#[derive(Debug, Clone)]
pub struct OnlineSession {
    state: StreamState,
}

impl OnlineSession {
    pub fn new(n: usize, mode: RankMode, weights: Option<&[u64]>, seed: u64) -> Result<Self> {
        Ok(Self::with_ranks(RankAssignment::sample(n, mode, weights, seed)?))
    }

    pub fn with_ranks(ranks: RankAssignment) -> Self {
        Self { state: StreamState::new(ranks) }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<Eviction> {
        let evicted = self.state.process_edge(u, v)?;
        Ok(Eviction { edge: [u, v], evicted })
    }

    pub fn current_set(&self) -> VertexSet {
        self.state.current_set()
    }

    pub fn state(&self) -> &StreamState {
        &self.state
    }
}
