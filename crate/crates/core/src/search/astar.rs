//! A* search towards a single target.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Heuristic, PathResult, SearchStats};
use crate::error::EngineError;
use crate::graph::NodeId;
use crate::static_graph::StaticGraph;

/// Shortest path from `source` to `target`, expanding nodes in order of
/// `d_u + h(u)`. With an admissible and consistent heuristic (and
/// `h(target) = 0`) the returned length is exact; with `h = 0` this is
/// Dijkstra stopped at the target.
pub fn astar(
    g: &StaticGraph,
    source: NodeId,
    target: NodeId,
    h: &dyn Heuristic,
) -> Result<PathResult, EngineError> {
    if let Some((edge, cost)) = g.negative_edge() {
        return Err(EngineError::NegativeCost { edge, cost });
    }
    debug_assert_eq!(h.estimate(target), 0, "heuristic must vanish at the target");

    let n = g.node_count();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut settled = vec![false; n];
    let mut stats = SearchStats::default();

    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((h.estimate(source), source)));

    while let Some(Reverse((_, u))) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        stats.settled += 1;
        if u == target {
            break;
        }
        let du = dist[u].expect("queued node has a label");
        for &e in g.out_edges(u) {
            let edge = g.edge(e);
            stats.relaxations += 1;
            let cand = du.saturating_add(edge.cost);
            if dist[edge.to].is_none_or(|cur| cand < cur) {
                dist[edge.to] = Some(cand);
                parent[edge.to] = Some((u, e));
                heap.push(Reverse((cand.saturating_add(h.estimate(edge.to)), edge.to)));
            }
        }
    }

    if !settled[target] {
        return Err(EngineError::Unreachable);
    }
    let labels = super::StaticDistances {
        source,
        dist,
        parent,
        stats,
    };
    Ok(labels.path_to(target).expect("settled target has a path"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{dijkstra, TableHeuristic, ZeroHeuristic};

    fn triangle() -> StaticGraph {
        StaticGraph::new(3, vec![(0, 1, 5), (0, 2, 1), (2, 1, 2)])
    }

    #[test]
    fn zero_heuristic_matches_dijkstra() {
        let g = triangle();
        let p = astar(&g, 0, 1, &ZeroHeuristic).unwrap();
        let d = dijkstra(&g, 0).unwrap();
        assert_eq!(Some(p.length), d.dist[1]);
    }

    #[test]
    fn admissible_table_finds_the_optimum() {
        // h(a)=0, h(b)=1, h(s)=2 never overestimates the true remaining
        // distance to a (0, 2, 3 respectively).
        let g = triangle();
        let h = TableHeuristic(vec![2, 0, 1]);
        let p = astar(&g, 0, 1, &h).unwrap();
        assert_eq!(p.length, 3);
        assert_eq!(p.nodes, vec![0, 2, 1]);
    }

    #[test]
    fn dead_end_source_is_unreachable() {
        let g = StaticGraph::new(2, vec![(1, 0, 1)]);
        assert_eq!(
            astar(&g, 0, 1, &ZeroHeuristic),
            Err(EngineError::Unreachable)
        );
    }

    #[test]
    fn source_equals_target_is_the_empty_path() {
        let g = triangle();
        let p = astar(&g, 0, 0, &ZeroHeuristic).unwrap();
        assert_eq!(p.length, 0);
        assert_eq!(p.nodes, vec![0]);
        assert!(p.edges.is_empty());
    }
}
