//! Bellman-Ford with negative-cycle detection.

use super::{NoObserver, SearchObserver, SearchStats, StaticDistances};
use crate::error::EngineError;
use crate::graph::NodeId;
use crate::static_graph::StaticGraph;

/// Single-source shortest distances; negative costs allowed.
///
/// Iterates full relaxation rounds until no label improves, at most
/// `|V| - 1` rounds, then runs one detection round. If an edge still
/// relaxes, a negative cycle is reachable from the source and one offending
/// cycle is returned in the error.
pub fn bellman_ford(g: &StaticGraph, source: NodeId) -> Result<StaticDistances, EngineError> {
    bellman_ford_observed(g, source, &mut NoObserver)
}

pub fn bellman_ford_observed(
    g: &StaticGraph,
    source: NodeId,
    observer: &mut dyn SearchObserver,
) -> Result<StaticDistances, EngineError> {
    let n = g.node_count();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut parent: Vec<Option<(NodeId, usize)>> = vec![None; n];
    let mut stats = SearchStats::default();
    dist[source] = Some(0);

    for _round in 1..n {
        let mut updated = false;
        for (e, edge) in g.edges().iter().enumerate() {
            let Some(du) = dist[edge.from] else { continue };
            stats.relaxations += 1;
            let cand = du.saturating_add(edge.cost);
            if dist[edge.to].is_none_or(|cur| cand < cur) {
                observer.on_relax(edge.to, dist[edge.to], cand);
                dist[edge.to] = Some(cand);
                parent[edge.to] = Some((edge.from, e));
                updated = true;
            }
        }
        if !updated {
            break;
        }
    }

    // Detection round: any remaining improvement implies a negative cycle.
    for (e, edge) in g.edges().iter().enumerate() {
        let Some(du) = dist[edge.from] else { continue };
        let cand = du.saturating_add(edge.cost);
        if dist[edge.to].is_none_or(|cur| cand < cur) {
            parent[edge.to] = Some((edge.from, e));
            return Err(EngineError::NegativeCycle {
                cycle: extract_cycle(n, &parent, edge.to),
            });
        }
    }

    Ok(StaticDistances {
        source,
        dist,
        parent,
        stats,
    })
}

/// Walks `n` parent steps from a node known to hang off a negative cycle,
/// which lands inside the cycle, then collects the cycle's edges in path
/// order.
fn extract_cycle(n: usize, parent: &[Option<(NodeId, usize)>], start: NodeId) -> Vec<usize> {
    let mut x = start;
    for _ in 0..n {
        x = parent[x].expect("relaxed node has a parent").0;
    }
    let anchor = x;
    let mut edges = Vec::new();
    let mut cur = anchor;
    loop {
        let (prev, e) = parent[cur].expect("cycle node has a parent");
        edges.push(e);
        cur = prev;
        if cur == anchor {
            break;
        }
    }
    edges.reverse();
    edges
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
        let bf = bellman_ford(&triangle(), 0).unwrap();
        let dj = dijkstra(&triangle(), 0).unwrap();
        assert_eq!(bf.dist, dj.dist);
    }

    #[test]
    fn reachable_negative_cycle_is_reported() {
        // 0 -> 1 -> 2 -> 1 with cycle cost 2 + (-3) = -1.
        let g = StaticGraph::new(3, vec![(0, 1, 1), (1, 2, 2), (2, 1, -3)]);
        match bellman_ford(&g, 0) {
            Err(EngineError::NegativeCycle { cycle }) => {
                let total: i64 = cycle.iter().map(|&e| g.edge(e).cost).sum();
                assert!(total < 0, "reported cycle must have negative total");
                // The listed edges must actually chain into a cycle.
                for w in cycle.windows(2) {
                    assert_eq!(g.edge(w[0]).to, g.edge(w[1]).from);
                }
                assert_eq!(g.edge(*cycle.last().unwrap()).to, g.edge(cycle[0]).from);
            }
            other => panic!("expected negative cycle, got {other:?}"),
        }
    }

    #[test]
    fn unreachable_negative_cycle_is_ignored() {
        let g = StaticGraph::new(4, vec![(0, 1, 1), (2, 3, -5), (3, 2, -5)]);
        let d = bellman_ford(&g, 0).unwrap();
        assert_eq!(d.dist[1], Some(1));
        assert_eq!(d.dist[2], None);
    }

    #[test]
    fn single_node_without_edges() {
        let g = StaticGraph::new(1, vec![]);
        let d = bellman_ford(&g, 0).unwrap();
        assert_eq!(d.dist, vec![Some(0)]);
    }

    #[test]
    fn negative_edges_without_cycle_are_exact() {
        // 0 -> 1 (4), 0 -> 2 (2), 2 -> 1 (-1): optimum to 1 is 1.
        let g = StaticGraph::new(3, vec![(0, 1, 4), (0, 2, 2), (2, 1, -1)]);
        let d = bellman_ford(&g, 0).unwrap();
        assert_eq!(d.dist[1], Some(1));
    }
}
