//! Admissibility and consistency audit for heuristics.

use super::{bellman_ford, Heuristic};
use crate::graph::{EdgeId, NodeId};
use crate::static_graph::StaticGraph;

/// Verdict of [`check_heuristic`]. A witness names the first violation
/// found (in node / edge id order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicReport {
    pub admissible: bool,
    /// `(node, h(node), true distance node -> target)`.
    pub admissibility_witness: Option<(NodeId, i64, i64)>,
    pub consistent: bool,
    /// `(edge, h(from), cost + h(to))`.
    pub consistency_witness: Option<(EdgeId, i64, i64)>,
}

/// Checks `h(u) <= dist(u, target)` for every node (true distances from one
/// backward search) and `h(u) <= c(uv) + h(v)` for every edge. Nodes that
/// cannot reach the target place no admissibility constraint. If a negative
/// cycle makes true distances unbounded below, no finite heuristic is
/// admissible and the report says so without a witness.
pub fn check_heuristic(g: &StaticGraph, target: NodeId, h: &dyn Heuristic) -> HeuristicReport {
    let mut admissible = true;
    let mut admissibility_witness = None;
    match bellman_ford(&g.reverse(), target) {
        Ok(back) => {
            for u in 0..g.node_count() {
                if let Some(true_dist) = back.dist[u] {
                    let est = h.estimate(u);
                    if est > true_dist {
                        admissible = false;
                        admissibility_witness = Some((u, est, true_dist));
                        break;
                    }
                }
            }
        }
        Err(_) => {
            admissible = false;
        }
    }

    let mut consistent = true;
    let mut consistency_witness = None;
    for (e, edge) in g.edges().iter().enumerate() {
        let lhs = h.estimate(edge.from);
        let rhs = edge.cost.saturating_add(h.estimate(edge.to));
        if lhs > rhs {
            consistent = false;
            consistency_witness = Some((e, lhs, rhs));
            break;
        }
    }

    HeuristicReport {
        admissible,
        admissibility_witness,
        consistent,
        consistency_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{dijkstra, TableHeuristic, ZeroHeuristic};

    fn triangle() -> StaticGraph {
        StaticGraph::new(3, vec![(0, 1, 5), (0, 2, 1), (2, 1, 2)])
    }

    #[test]
    fn zero_heuristic_is_admissible_and_consistent() {
        let r = check_heuristic(&triangle(), 1, &ZeroHeuristic);
        assert!(r.admissible && r.consistent);
    }

    #[test]
    fn exact_distances_are_admissible_and_consistent() {
        // Equality case: h = true distance to the target.
        let g = triangle();
        let back = dijkstra(&g.reverse(), 1).unwrap();
        let table: Vec<i64> = (0..g.node_count())
            .map(|u| back.dist[u].unwrap_or(0))
            .collect();
        let r = check_heuristic(&g, 1, &TableHeuristic(table));
        assert!(r.admissible && r.consistent);
    }

    #[test]
    fn overestimate_is_flagged() {
        // h(b) = 10 but the true distance b -> a is 2.
        let h = TableHeuristic(vec![0, 0, 10]);
        let r = check_heuristic(&triangle(), 1, &h);
        assert!(!r.admissible);
        assert_eq!(r.admissibility_witness, Some((2, 10, 2)));
        assert!(!r.consistent, "h(b) > c(b,a) + h(a) as well");
    }
}
