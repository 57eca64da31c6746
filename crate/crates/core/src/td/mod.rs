//! Time-dependent fastest paths.
//!
//! Two variants share one search skeleton. [`naive_td_dijkstra`] applies the
//! textbook relaxation `d_v <- min(d_v, d_u + c(uv, d_u))` to any graph; it
//! is UNSOUND for non-FIFO cost functions and is kept as a first-class,
//! falsifiable baseline (on the counterexample corpus it reproduces the
//! wrong arrival exactly). [`td_dijkstra_fifo`] refuses to run unless every
//! edge passes the FIFO check; under that precondition the same relaxation
//! is exact. [`td_astar`] adds a free-flow lower-bound heuristic on top.

mod astar;
mod dijkstra;

pub use astar::td_astar;
pub use dijkstra::{extract_route, naive_td_dijkstra, td_dijkstra_fifo};

use crate::graph::{EdgeId, NodeId};
use crate::search::SearchStats;
use crate::time::TimePoint;

/// A fastest-path query: start at `source` at time `t0`; `target` is
/// optional for the all-nodes searches and required for the targeted ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TdQuery {
    pub source: NodeId,
    pub target: Option<NodeId>,
    pub t0: TimePoint,
}

impl TdQuery {
    pub fn new(source: NodeId, target: Option<NodeId>, t0: TimePoint) -> Self {
        TdQuery { source, target, t0 }
    }
}

/// Earliest arrivals from one source at one departure time.
///
/// `arrival[source] = t0`; for every other reached node `v` with parent
/// `(u, e, depart)`, `depart = arrival[u]` and
/// `arrival[v] = depart + c(e, depart)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalTimes {
    pub source: NodeId,
    pub t0: TimePoint,
    pub arrival: Vec<Option<TimePoint>>,
    pub parent: Vec<Option<(NodeId, EdgeId, TimePoint)>>,
    pub stats: SearchStats,
}

/// One timed edge traversal of a route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEvent {
    pub edge: EdgeId,
    pub depart: TimePoint,
    pub arrive: TimePoint,
}

/// A timed route. Without waiting each `arrive` equals the next `depart`;
/// solvers that ran with waiting enabled may instead have
/// `depart >= previous arrive`. `arrival` equals the last arrive (or the
/// departure time for an empty route).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteResult {
    pub nodes: Vec<NodeId>,
    pub edge_events: Vec<EdgeEvent>,
    pub arrival: TimePoint,
}
