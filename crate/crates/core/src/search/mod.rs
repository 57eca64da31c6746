//! Shortest paths on static costs.
//!
//! All searches here share the label/relaxation vocabulary: each node `v`
//! carries a tentative label `d_v`, relaxing an edge `uv` performs
//! `d_v <- min(d_v, d_u + c(uv))`, and an algorithm is done when no
//! relaxation can improve any label. Every search allocates private state
//! per call, so any number may run concurrently over a shared graph.

mod astar;
mod bellman_ford;
mod bidirectional;
mod dijkstra;
mod heuristic_check;

pub use astar::astar;
pub use bellman_ford::{bellman_ford, bellman_ford_observed};
pub use bidirectional::bidirectional_dijkstra;
pub use dijkstra::{dijkstra, dijkstra_observed};
pub use heuristic_check::{check_heuristic, HeuristicReport};

use crate::graph::{EdgeId, NodeId};

/// Counters every search fills in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Nodes taken out of the frontier and expanded.
    pub settled: u64,
    /// Edge relaxations attempted.
    pub relaxations: u64,
}

/// Single-source distance labels plus parent links.
///
/// `dist[v] = None` means `v` is unreachable. Following `parent` links from
/// any reached node terminates at `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticDistances {
    pub source: NodeId,
    pub dist: Vec<Option<i64>>,
    pub parent: Vec<Option<(NodeId, EdgeId)>>,
    pub stats: SearchStats,
}

impl StaticDistances {
    /// Reconstructs the tree path from the source to `v`.
    pub fn path_to(&self, v: NodeId) -> Option<PathResult> {
        let length = self.dist[v]?;
        let mut nodes = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        while let Some((prev, e)) = self.parent[cur] {
            nodes.push(prev);
            edges.push(e);
            cur = prev;
        }
        debug_assert_eq!(cur, self.source);
        nodes.reverse();
        edges.reverse();
        Some(PathResult {
            nodes,
            edges,
            length,
        })
    }
}

/// A concrete path: consecutive nodes joined by the listed edges, `length`
/// equal to the sum of the listed edge costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathResult {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<EdgeId>,
    pub length: i64,
}

/// Per-node cost-to-go estimate for A*.
pub trait Heuristic {
    fn estimate(&self, u: NodeId) -> i64;
}

/// The trivial heuristic; A* degenerates to Dijkstra.
#[derive(Clone, Copy, Debug, Default)]
pub struct ZeroHeuristic;

impl Heuristic for ZeroHeuristic {
    fn estimate(&self, _u: NodeId) -> i64 {
        0
    }
}

/// Heuristic backed by a per-node value table.
#[derive(Clone, Debug)]
pub struct TableHeuristic(pub Vec<i64>);

impl Heuristic for TableHeuristic {
    fn estimate(&self, u: NodeId) -> i64 {
        self.0[u]
    }
}

impl<F: Fn(NodeId) -> i64> Heuristic for F {
    fn estimate(&self, u: NodeId) -> i64 {
        self(u)
    }
}

/// Hook for tests that audit run behaviour (settle-once, label monotonicity).
pub trait SearchObserver {
    fn on_settle(&mut self, _node: NodeId, _dist: i64) {}
    fn on_relax(&mut self, _node: NodeId, _old: Option<i64>, _new: i64) {}
}

/// Observer that records nothing.
pub struct NoObserver;

impl SearchObserver for NoObserver {}
