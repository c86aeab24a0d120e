use serde::Serialize;

use crate::algorithms::{beats, weighted_key, RankAssignment, RankMode};
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// How a node encodes its random draw on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyEncoding {
    /// All 64 bits of the draw.
    Full,
    /// Only the top `bits` bits of the draw.
    Quantized { bits: u32 },
}

impl KeyEncoding {
    /// `ceil(3 log2 n)` bits, enough for collision probability about `1/n`.
    pub fn strict(n: usize) -> Self {
        let bits = (3.0 * (n.max(2) as f64).log2()).ceil() as u32;
        KeyEncoding::Quantized { bits: bits.clamp(1, 64) }
    }

    pub fn bits(self) -> u32 {
        match self {
            KeyEncoding::Full => 64,
            KeyEncoding::Quantized { bits } => bits,
        }
    }

    fn encode(self, draw: u64) -> u64 {
        match self {
            KeyEncoding::Full | KeyEncoding::Quantized { bits: 64 } => draw,
            KeyEncoding::Quantized { bits } => draw & !(u64::MAX >> bits),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RoundConfig {
    pub encoding: KeyEncoding,
    /// Payload budget per message, in bits.
    pub budget_bits: u32,
}

impl Default for RoundConfig {
    fn default() -> Self {
        Self { encoding: KeyEncoding::Full, budget_bits: 128 }
    }
}

/// A message as received on one port. The sender label travels in the
/// envelope and is not charged to the payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inbound {
    pub port: usize,
    pub sender: usize,
    pub draw: u64,
    pub weight: Option<u64>,
}

/// Everything a node knows after the round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeView {
    pub own_id: usize,
    pub own_draw: u64,
    pub own_weight: Option<u64>,
    pub inbox: Vec<Inbound>,
}

fn key_of(draw: u64, weight: Option<u64>) -> u64 {
    match weight {
        Some(w) => weighted_key(draw, w),
        None => draw,
    }
}

/// Join iff the node's key beats every key in its inbox.
pub fn decide(view: &NodeView) -> bool {
    let own = key_of(view.own_draw, view.own_weight);
    view.inbox.iter().all(|m| beats(own, view.own_id, key_of(m.draw, m.weight), m.sender))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTrace {
    pub messages_sent: usize,
    pub max_message_bits: u32,
    pub budget_bits: u32,
    pub decisions: Vec<bool>,
}

/// Runs one broadcast round with the draws of `ranks`; weights are broadcast
/// alongside the draw when the ranks are weighted.
pub fn run_round(
    g: &Graph,
    weights: Option<&[u64]>,
    ranks: &RankAssignment,
    config: RoundConfig,
) -> Result<(VertexSet, RoundTrace, Vec<NodeView>)> {
    let n = g.n();
    let weights = match ranks.mode() {
        RankMode::Weighted => Some(weights.ok_or(Error::MissingWeights)?),
        RankMode::Unweighted => None,
    };
    let payload_bits = config.encoding.bits() + if weights.is_some() { 64 } else { 0 };
    if payload_bits > config.budget_bits {
        return Err(Error::InvalidParameter(format!(
            "messages need {payload_bits} bits, budget is {}",
            config.budget_bits
        )));
    }

    let outgoing: Vec<(u64, Option<u64>)> = (0..n)
        .map(|v| (config.encoding.encode(ranks.draw(v)), weights.map(|w| w[v])))
        .collect();

    let mut messages_sent = 0;
    let views: Vec<NodeView> = (0..n)
        .map(|v| {
            let inbox: Vec<Inbound> = g
                .neighbors(v)
                .iter()
                .enumerate()
                .map(|(port, &u)| {
                    let (draw, weight) = outgoing[u];
                    Inbound { port, sender: u, draw, weight }
                })
                .collect();
            messages_sent += inbox.len();
            NodeView { own_id: v, own_draw: outgoing[v].0, own_weight: outgoing[v].1, inbox }
        })
        .collect();

    let decisions: Vec<bool> = views.iter().map(decide).collect();
    let trace = RoundTrace {
        messages_sent,
        max_message_bits: if messages_sent > 0 { payload_bits } else { 0 },
        budget_bits: config.budget_bits,
        decisions,
    };
    Ok((VertexSet::from_mask(&trace.decisions), trace, views))
}

/// One round with ranks sampled from `seed`, exactly as
/// [`RankAssignment::sample`] would draw them.
pub fn simulate_one_round(
    g: &Graph,
    weights: Option<&[u64]>,
    seed: u64,
    config: RoundConfig,
) -> Result<(VertexSet, RoundTrace)> {
    let mode = if weights.is_some() { RankMode::Weighted } else { RankMode::Unweighted };
    let ranks = RankAssignment::sample(g.n(), mode, weights, seed)?;
    let (set, trace, _) = run_round(g, weights, &ranks, config)?;
    Ok((set, trace))
}
