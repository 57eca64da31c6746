//! Static (time-independent) cost view.
//!
//! The classic algorithms in [`crate::search`] run over this view. Costs are
//! signed so that Bellman-Ford can be exercised with negative durations;
//! the time-dependent code paths never see this type.

use crate::graph::{EdgeId, Graph, NodeId};
use crate::time::TimePoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StaticEdge {
    pub from: NodeId,
    pub to: NodeId,
    pub cost: i64,
}

#[derive(Clone, Debug)]
pub struct StaticGraph {
    node_count: usize,
    edges: Vec<StaticEdge>,
    out: Vec<Vec<EdgeId>>,
}

impl StaticGraph {
    pub fn new(node_count: usize, edges: Vec<(NodeId, NodeId, i64)>) -> Self {
        let edges: Vec<StaticEdge> = edges
            .into_iter()
            .map(|(from, to, cost)| {
                assert!(
                    from < node_count && to < node_count,
                    "edge endpoint out of range"
                );
                StaticEdge { from, to, cost }
            })
            .collect();
        let mut out = vec![Vec::new(); node_count];
        for (id, e) in edges.iter().enumerate() {
            out[e.from].push(id);
        }
        StaticGraph {
            node_count,
            edges,
            out,
        }
    }

    /// Snapshot of a time-dependent graph with every edge evaluated at a
    /// fixed departure time.
    pub fn snapshot_at(g: &Graph, t: TimePoint) -> Self {
        Self::from_graph(g, |e| g.edge(e).cost.evaluate(t).ticks())
    }

    /// Free-flow view: every edge at its minimum travel time. Distances on
    /// this view are lower bounds on any realised travel, which is what
    /// makes them admissible heuristics for the time-dependent A*.
    pub fn free_flow(g: &Graph) -> Self {
        Self::from_graph(g, |e| g.edge(e).cost.min_travel_time().ticks())
    }

    fn from_graph(g: &Graph, cost: impl Fn(EdgeId) -> u64) -> Self {
        let edges = (0..g.edge_count())
            .map(|e| {
                let edge = g.edge(e);
                let c = i64::try_from(cost(e)).expect("duration too large for static view");
                (edge.from, edge.to, c)
            })
            .collect();
        Self::new(g.node_count(), edges)
    }

    /// Reverse graph. Edge ids are preserved: edge `e` here is edge `e` of
    /// the forward graph with its endpoints swapped.
    pub fn reverse(&self) -> Self {
        let edges = self.edges.iter().map(|e| (e.to, e.from, e.cost)).collect();
        Self::new(self.node_count, edges)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[StaticEdge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> StaticEdge {
        self.edges[e]
    }

    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out[v]
    }

    /// Lowest-id edge with a negative cost, if any.
    pub fn negative_edge(&self) -> Option<(EdgeId, i64)> {
        self.edges
            .iter()
            .enumerate()
            .find(|(_, e)| e.cost < 0)
            .map(|(id, e)| (id, e.cost))
    }
}
