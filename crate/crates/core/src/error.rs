use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} is outside the universe 0..{universe}")]
    NotInUniverse { vertex: usize, universe: usize },

    #[error("vertex {0} is listed twice")]
    DuplicateVertex(usize),

    #[error("{0} weights given for {1} vertices")]
    WeightCount(usize, usize),

    #[error("vertex {0} has weight 0; weights must be positive integers")]
    ZeroWeight(usize),

    #[error("total weight overflows 64 bits")]
    WeightOverflow,

    #[error("vertices {0} and {1} are adjacent, so the set is not independent")]
    NotIndependent(usize, usize),

    #[error("cannot build a simple {delta}-regular bipartite graph with sides of {side}; use side >= delta")]
    RegularBipartite { delta: usize, side: usize },

    #[error("exact solver is limited to {limit} vertices, graph has {n}")]
    OracleLimit { n: usize, limit: usize },

    #[error("maximum degree is {0}, this rule requires maximum degree at most 1")]
    DegreeTooLarge(usize),

    #[error("weighted ranks require one weight per vertex")]
    MissingWeights,

    #[error("unknown algorithm `{0}` (expected boppana, max, selkow, greedy-min, greedy-max or gwmin2)")]
    UnknownAlgorithm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
