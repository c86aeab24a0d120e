//! One-round local-maximum rules and the two-round extension.

use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::{Error, Result};

use super::{RankAssignment, RankMode};

/// Vertices ranked above all of their neighbours.
pub fn boppana(g: &Graph, ranks: &RankAssignment) -> VertexSet {
    assert_eq!(ranks.len(), g.n(), "one rank per vertex");
    let mask: Vec<bool> = (0..g.n()).map(|v| ranks.is_local_max(g, v)).collect();
    VertexSet::from_mask(&mask)
}

/// Weight-tilted rule: the local-maximum rule applied to weighted keys, so
/// that `Pr[v selected] = w(v) / w(N[v])`.
pub fn max_alg(wg: &WeightedGraph, ranks: &RankAssignment) -> Result<VertexSet> {
    if ranks.mode() != RankMode::Weighted {
        return Err(Error::InvalidParameter("the max rule needs weighted ranks".into()));
    }
    Ok(boppana(wg.graph(), ranks))
}

/// Optimal rule for maximum degree at most one: each edge keeps its heavier
/// endpoint (ties by rank) and isolated vertices are kept.
pub fn max_alg_delta1_fix(wg: &WeightedGraph, ranks: &RankAssignment) -> Result<VertexSet> {
    let g = wg.graph();
    let delta = g.max_degree();
    if delta > 1 {
        return Err(Error::DegreeTooLarge(delta));
    }
    let keep: Vec<bool> = (0..g.n())
        .map(|v| match g.neighbors(v) {
            [] => true,
            [u] => {
                let (wv, wu) = (wg.weight(v), wg.weight(*u));
                wv > wu || (wv == wu && ranks.beats(v, *u))
            }
            _ => unreachable!("degree checked above"),
        })
        .collect();
    Ok(VertexSet::from_mask(&keep))
}

/// Two-round extension: after the first round removes the selected vertices
/// and their neighbours, every surviving vertex ranked above all of its
/// surviving neighbours joins as well.
pub fn selkow_two_round(g: &Graph, ranks: &RankAssignment) -> VertexSet {
    let first = boppana(g, ranks);
    let mut removed = first.mask();
    for v in first.iter() {
        for &u in g.neighbors(v) {
            removed[u] = true;
        }
    }
    let mut selected = first.mask();
    for v in (0..g.n()).filter(|&v| !removed[v]) {
        if g.neighbors(v).iter().filter(|&&u| !removed[u]).all(|&u| ranks.beats(v, u)) {
            selected[v] = true;
        }
    }
    VertexSet::from_mask(&selected)
}
