//! Time-dependent Dijkstra: the naive extension and the FIFO-guarded one.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{ArrivalTimes, EdgeEvent, RouteResult, TdQuery};
use crate::error::EngineError;
use crate::graph::Graph;
use crate::search::SearchStats;
use crate::time::TimePoint;

/// Direct extension of Dijkstra to departure-time-dependent costs:
/// `d_s = t0` and relaxation `d_v <- min(d_v, d_u + c(uv, d_u))`.
///
/// UNSOUND in general: when a cost function is non-FIFO, leaving a node
/// later can arrive earlier, subpath optimality fails, and the settle-once
/// discipline locks in wrong arrivals. Use [`td_dijkstra_fifo`] for exact
/// answers, or the state-graph solver when the graph is not FIFO. This
/// variant exists so the failure is reproducible, not hidden.
pub fn naive_td_dijkstra(g: &Graph, q: &TdQuery) -> Result<ArrivalTimes, EngineError> {
    td_core(g, q)
}

/// Exact earliest arrivals for FIFO graphs.
///
/// Eagerly verifies the whole-graph FIFO property (cached on the graph) and
/// then runs the identical search skeleton as [`naive_td_dijkstra`]: the
/// precondition is what makes the relaxation sound.
pub fn td_dijkstra_fifo(g: &Graph, q: &TdQuery) -> Result<ArrivalTimes, EngineError> {
    if let Some(&(edge, witness)) = g.fifo_violation() {
        return Err(EngineError::NonFifoEdge { edge, witness });
    }
    td_core(g, q)
}

fn td_core(g: &Graph, q: &TdQuery) -> Result<ArrivalTimes, EngineError> {
    let n = g.node_count();
    let mut arrival: Vec<Option<TimePoint>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut settled = vec![false; n];
    let mut stats = SearchStats::default();

    let mut heap = BinaryHeap::new();
    arrival[q.source] = Some(q.t0);
    heap.push(Reverse((q.t0, q.source)));

    while let Some(Reverse((t, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        stats.settled += 1;
        for &e in g.out_edges(u) {
            let edge = g.edge(e);
            stats.relaxations += 1;
            let dur = edge.cost.evaluate(t);
            let cand = t.checked_add(dur).ok_or(EngineError::TimeOverflow)?;
            if arrival[edge.to].is_none_or(|cur| cand < cur) {
                arrival[edge.to] = Some(cand);
                parent[edge.to] = Some((u, e, t));
                heap.push(Reverse((cand, edge.to)));
            }
        }
    }

    Ok(ArrivalTimes {
        source: q.source,
        t0: q.t0,
        arrival,
        parent,
        stats,
    })
}

/// Rebuilds the timed route to `target` from parent links. Each edge event
/// departs exactly when the previous one arrives.
pub fn extract_route(a: &ArrivalTimes, target: usize) -> Result<RouteResult, EngineError> {
    let arrival = a.arrival[target].ok_or(EngineError::Unreachable)?;
    let mut nodes = vec![target];
    let mut events = Vec::new();
    let mut cur = target;
    while let Some((prev, e, depart)) = a.parent[cur] {
        events.push(EdgeEvent {
            edge: e,
            depart,
            arrive: a.arrival[cur].expect("reached node has an arrival"),
        });
        nodes.push(prev);
        cur = prev;
    }
    debug_assert_eq!(cur, a.source);
    nodes.reverse();
    events.reverse();
    Ok(RouteResult {
        nodes,
        edge_events: events,
        arrival,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{fig1, fig1_fifo};
    use crate::search::dijkstra;
    use crate::static_graph::StaticGraph;
    use crate::time::DurationTicks;
    use crate::TravelTimeFunction;

    #[test]
    fn naive_reproduces_the_counterexample_arithmetic() {
        // Settling v at time 1 locks in c(vf, 1) = 10, so f gets 11 even
        // though arriving at v at 2 would reach f at 3.
        let g = fig1().graph;
        let a = naive_td_dijkstra(&g, &TdQuery::new(0, None, TimePoint::ZERO)).unwrap();
        assert_eq!(a.arrival[2], Some(TimePoint::new(1))); // v
        assert_eq!(a.arrival[3], Some(TimePoint::new(11))); // f
    }

    #[test]
    fn naive_route_extraction_goes_direct() {
        let g = fig1().graph;
        let a = naive_td_dijkstra(&g, &TdQuery::new(0, None, TimePoint::ZERO)).unwrap();
        let route = extract_route(&a, 3).unwrap();
        assert_eq!(route.nodes, vec![0, 2, 3]); // s, v, f
        assert_eq!(route.arrival, TimePoint::new(11));
        // Re-evaluating each edge at its departure reproduces each arrival.
        for ev in &route.edge_events {
            let dur = g.edge(ev.edge).cost.evaluate(ev.depart);
            assert_eq!(ev.depart.checked_add(dur), Some(ev.arrive));
        }
    }

    #[test]
    fn fifo_variant_refuses_the_counterexample() {
        let g = fig1().graph;
        match td_dijkstra_fifo(&g, &TdQuery::new(0, Some(3), TimePoint::ZERO)) {
            Err(EngineError::NonFifoEdge { edge, witness }) => {
                assert_eq!(edge, 3); // v -> f
                assert_eq!(witness.t1, TimePoint::new(1));
                assert_eq!(witness.t2, TimePoint::new(2));
                assert_eq!(witness.a1, TimePoint::new(11));
                assert_eq!(witness.a2, TimePoint::new(3));
            }
            other => panic!("expected NonFifoEdge, got {other:?}"),
        }
    }

    #[test]
    fn fifo_variant_on_the_constant_repair() {
        // fig1 with vf made Constant(10): the two simple s-f paths arrive at
        // 11 (via v directly) and 12 (via u), so 11 via (s, v, f).
        let g = fig1_fifo().graph;
        let a = td_dijkstra_fifo(&g, &TdQuery::new(0, None, TimePoint::ZERO)).unwrap();
        assert_eq!(a.arrival[3], Some(TimePoint::new(11)));
        let route = extract_route(&a, 3).unwrap();
        assert_eq!(route.nodes, vec![0, 2, 3]);
    }

    #[test]
    fn constant_costs_reduce_to_static_distances() {
        let g = Graph::new(
            4,
            vec![
                edge(0, 1, 2),
                edge(0, 2, 7),
                edge(1, 2, 3),
                edge(2, 3, 1),
                edge(1, 3, 9),
            ],
        );
        let t0 = TimePoint::new(5);
        let a = naive_td_dijkstra(&g, &TdQuery::new(0, None, t0)).unwrap();
        let d = dijkstra(&StaticGraph::snapshot_at(&g, TimePoint::ZERO), 0).unwrap();
        for v in 0..4 {
            assert_eq!(
                a.arrival[v].map(|t| t.ticks()),
                d.dist[v].map(|x| t0.ticks() + x as u64)
            );
        }
    }

    #[test]
    fn route_to_source_is_empty() {
        let g = fig1_fifo().graph;
        let a = td_dijkstra_fifo(&g, &TdQuery::new(0, None, TimePoint::new(4))).unwrap();
        let route = extract_route(&a, 0).unwrap();
        assert!(route.nodes == vec![0] && route.edge_events.is_empty());
        assert_eq!(route.arrival, TimePoint::new(4));
    }

    #[test]
    fn unreached_target_is_an_error() {
        let g = Graph::new(2, vec![]);
        let a = naive_td_dijkstra(&g, &TdQuery::new(0, None, TimePoint::ZERO)).unwrap();
        assert_eq!(extract_route(&a, 1), Err(EngineError::Unreachable));
    }

    fn edge(from: usize, to: usize, cost: u64) -> crate::Edge {
        crate::Edge {
            from,
            to,
            cost: TravelTimeFunction::Constant(DurationTicks::new(cost)),
        }
    }
}
