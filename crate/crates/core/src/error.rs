//! Engine-wide error type.

use thiserror::Error;

use crate::func::FifoWitness;
use crate::graph::EdgeId;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("edge {edge} has negative static cost {cost}")]
    NegativeCost { edge: EdgeId, cost: i64 },

    #[error("negative-cost cycle reachable from the source ({} edges)", .cycle.len())]
    NegativeCycle { cycle: Vec<EdgeId> },

    #[error("target is unreachable")]
    Unreachable,

    #[error(
        "edge {edge} violates the FIFO property: departing at {} arrives at {}, \
         departing at {} arrives at {}",
        .witness.t1, .witness.a1, .witness.t2, .witness.a2
    )]
    NonFifoEdge { edge: EdgeId, witness: FifoWitness },

    #[error("state expansion was truncated before any target state was found")]
    Truncated,

    #[error("tick arithmetic overflow")]
    TimeOverflow,

    #[error("query requires a target node")]
    TargetRequired,

    #[error("graph too large for exhaustive search: {nodes} nodes (limit {limit})")]
    TooLarge { nodes: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}
