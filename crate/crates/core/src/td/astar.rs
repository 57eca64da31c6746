//! Goal-directed time-dependent search.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::dijkstra::extract_route;
use super::{ArrivalTimes, RouteResult, TdQuery};
use crate::error::EngineError;
use crate::graph::Graph;
use crate::search::{dijkstra, SearchStats};
use crate::static_graph::StaticGraph;
use crate::time::TimePoint;

/// A* over arrival times for FIFO graphs.
///
/// The heuristic is the static shortest distance to the target under each
/// edge's minimum travel time (one backward Dijkstra on the free-flow
/// view). Every realised edge time is at least its minimum, so the estimate
/// never overestimates and the arrival matches [`super::td_dijkstra_fifo`].
pub fn td_astar(g: &Graph, q: &TdQuery) -> Result<RouteResult, EngineError> {
    let target = q.target.ok_or(EngineError::TargetRequired)?;
    if let Some(&(edge, witness)) = g.fifo_violation() {
        return Err(EngineError::NonFifoEdge { edge, witness });
    }

    // h[u] = free-flow distance u -> target; None means the target is not
    // reachable from u at all, so u is never worth expanding.
    let back = dijkstra(&StaticGraph::free_flow(g).reverse(), target)
        .expect("free-flow costs are non-negative");
    let h = |u: usize| back.dist[u];

    let n = g.node_count();
    let mut arrival: Vec<Option<TimePoint>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut settled = vec![false; n];
    let mut stats = SearchStats::default();

    let Some(h0) = h(q.source) else {
        return Err(EngineError::Unreachable);
    };
    let mut heap = BinaryHeap::new();
    arrival[q.source] = Some(q.t0);
    heap.push(Reverse((key(q.t0, h0), q.source)));

    while let Some(Reverse((_, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        stats.settled += 1;
        if u == target {
            break;
        }
        let t = arrival[u].expect("queued node has an arrival");
        for &e in g.out_edges(u) {
            let edge = g.edge(e);
            stats.relaxations += 1;
            let Some(hv) = h(edge.to) else { continue };
            let dur = edge.cost.evaluate(t);
            let cand = t.checked_add(dur).ok_or(EngineError::TimeOverflow)?;
            if arrival[edge.to].is_none_or(|cur| cand < cur) {
                arrival[edge.to] = Some(cand);
                parent[edge.to] = Some((u, e, t));
                heap.push(Reverse((key(cand, hv), edge.to)));
            }
        }
    }

    if !settled[target] {
        return Err(EngineError::Unreachable);
    }
    let labels = ArrivalTimes {
        source: q.source,
        t0: q.t0,
        arrival,
        parent,
        stats,
    };
    extract_route(&labels, target)
}

fn key(arrival: TimePoint, h: i64) -> u64 {
    arrival.ticks().saturating_add(h as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fig1, fig1_fifo};
    use crate::td::td_dijkstra_fifo;

    #[test]
    fn matches_the_fifo_dijkstra_on_the_repaired_counterexample() {
        let g = fig1_fifo().graph;
        let q = TdQuery::new(0, Some(3), TimePoint::ZERO);
        let route = td_astar(&g, &q).unwrap();
        let plain = td_dijkstra_fifo(&g, &q).unwrap();
        assert_eq!(Some(route.arrival), plain.arrival[3]);
    }

    #[test]
    fn target_equals_source() {
        let g = fig1_fifo().graph;
        let q = TdQuery::new(1, Some(1), TimePoint::new(9));
        let route = td_astar(&g, &q).unwrap();
        assert_eq!(route.arrival, TimePoint::new(9));
        assert!(route.edge_events.is_empty());
    }

    #[test]
    fn disconnected_target_is_unreachable() {
        let g = Graph::new(2, vec![]);
        let q = TdQuery::new(0, Some(1), TimePoint::ZERO);
        assert_eq!(td_astar(&g, &q), Err(EngineError::Unreachable));
    }

    #[test]
    fn missing_target_is_rejected() {
        let g = fig1_fifo().graph;
        let q = TdQuery::new(0, None, TimePoint::ZERO);
        assert_eq!(td_astar(&g, &q), Err(EngineError::TargetRequired));
    }

    #[test]
    fn non_fifo_graph_is_refused() {
        let g = fig1().graph;
        let q = TdQuery::new(0, Some(3), TimePoint::ZERO);
        assert!(matches!(
            td_astar(&g, &q),
            Err(EngineError::NonFifoEdge { edge: 3, .. })
        ));
    }
}
