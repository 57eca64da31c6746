//! Bidirectional Dijkstra.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::PathResult;
use crate::error::EngineError;
use crate::graph::NodeId;
use crate::static_graph::StaticGraph;

struct Side {
    dist: Vec<Option<i64>>,
    parent: Vec<Option<(NodeId, usize)>>,
    settled: Vec<bool>,
    heap: BinaryHeap<Reverse<(i64, NodeId)>>,
}

impl Side {
    fn new(n: usize, start: NodeId) -> Self {
        let mut side = Side {
            dist: vec![None; n],
            parent: vec![None; n],
            settled: vec![false; n],
            heap: BinaryHeap::new(),
        };
        side.dist[start] = Some(0);
        side.heap.push(Reverse((0, start)));
        side
    }

    /// Smallest non-stale key in the frontier.
    fn frontier_min(&mut self) -> Option<i64> {
        while let Some(&Reverse((d, u))) = self.heap.peek() {
            if self.settled[u] {
                self.heap.pop();
            } else {
                return Some(d);
            }
        }
        None
    }
}

/// Shortest path by a forward search from `source` and a backward search on
/// the reverse graph from `target`. The searches stop once the sum of the
/// two frontier minima can no longer beat the best meeting point found.
pub fn bidirectional_dijkstra(
    g: &StaticGraph,
    source: NodeId,
    target: NodeId,
) -> Result<PathResult, EngineError> {
    if let Some((edge, cost)) = g.negative_edge() {
        return Err(EngineError::NegativeCost { edge, cost });
    }
    if source == target {
        return Ok(PathResult {
            nodes: vec![source],
            edges: vec![],
            length: 0,
        });
    }

    let n = g.node_count();
    let reverse = g.reverse();
    let mut fwd = Side::new(n, source);
    let mut bwd = Side::new(n, target);

    let mut best: Option<(i64, NodeId)> = None;

    loop {
        let (fmin, bmin) = (fwd.frontier_min(), bwd.frontier_min());
        let (Some(fm), Some(bm)) = (fmin, bmin) else {
            // One frontier is exhausted; nothing can improve further.
            break;
        };
        if let Some((len, _)) = best {
            if fm.saturating_add(bm) >= len {
                break;
            }
        }
        // Expand the side with the smaller frontier minimum; ties forward.
        let forward_turn = fm <= bm;
        let (side, graph) = if forward_turn {
            (&mut fwd, g)
        } else {
            (&mut bwd, &reverse)
        };
        let Some(Reverse((d, u))) = side.heap.pop() else {
            break;
        };
        if side.settled[u] {
            continue;
        }
        side.settled[u] = true;
        for &e in graph.out_edges(u) {
            let edge = graph.edge(e);
            let cand = d.saturating_add(edge.cost);
            if side.dist[edge.to].is_none_or(|cur| cand < cur) {
                side.dist[edge.to] = Some(cand);
                side.parent[edge.to] = Some((u, e));
                side.heap.push(Reverse((cand, edge.to)));
            }
        }
        // Meeting-point bookkeeping: u now has an exact label on this side.
        let other = if forward_turn { &bwd } else { &fwd };
        if let Some(od) = other.dist[u] {
            let total = d.saturating_add(od);
            if best.is_none_or(|(len, _)| total < len) {
                best = Some((total, u));
            }
        }
    }

    let Some((length, meet)) = best else {
        return Err(EngineError::Unreachable);
    };

    // Forward half: source .. meet.
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut cur = meet;
    while let Some((prev, e)) = fwd.parent[cur] {
        nodes.push(cur);
        edges.push(e);
        cur = prev;
    }
    nodes.push(cur);
    nodes.reverse();
    edges.reverse();
    // Backward half: meet .. target, parents point towards the target.
    let mut cur = meet;
    while let Some((prev, e)) = bwd.parent[cur] {
        nodes.push(prev);
        edges.push(e);
        cur = prev;
    }

    Ok(PathResult {
        nodes,
        edges,
        length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::dijkstra;

    fn triangle() -> StaticGraph {
        StaticGraph::new(3, vec![(0, 1, 5), (0, 2, 1), (2, 1, 2)])
    }

    #[test]
    fn matches_dijkstra_on_the_triangle() {
        let g = triangle();
        let p = bidirectional_dijkstra(&g, 0, 1).unwrap();
        assert_eq!(Some(p.length), dijkstra(&g, 0).unwrap().dist[1]);
        let total: i64 = p.edges.iter().map(|&e| g.edge(e).cost).sum();
        assert_eq!(total, p.length, "listed edges must sum to the length");
    }

    #[test]
    fn source_equals_target() {
        let p = bidirectional_dijkstra(&triangle(), 1, 1).unwrap();
        assert_eq!(p.length, 0);
        assert!(p.edges.is_empty());
    }

    #[test]
    fn disconnected_pair_is_unreachable() {
        let g = StaticGraph::new(3, vec![(0, 1, 1)]);
        assert_eq!(
            bidirectional_dijkstra(&g, 0, 2),
            Err(EngineError::Unreachable)
        );
    }
}
