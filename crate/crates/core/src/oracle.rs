//! Brute-force ground truth.
//!
//! The fastest-path oracle enumerates timed walks (not just simple paths:
//! the optimum may revisit nodes, as the pseudo-polynomial family shows) on
//! a dense `(node, time)` grid bounded by a horizon. It shares no code or
//! search structure with the engine: a plain dynamic program over ascending
//! time, no priority queues, no pruning. Every engine result is judged
//! against it.
//!
//! The static oracle enumerates simple paths by depth-first search, which
//! is exact for time-independent costs without negative cycles.

use std::collections::VecDeque;

use crate::error::EngineError;
use crate::graph::{Graph, NodeId};
use crate::static_graph::StaticGraph;
use crate::time::TimePoint;

/// Default cap on graph size for exhaustive oracles.
pub const DEFAULT_NODE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Allow waiting one tick at a node between edge traversals.
    pub allow_wait: bool,
    /// Cap on consecutive waiting ticks at one node; `None` is bounded only
    /// by the horizon.
    pub max_wait_ticks: Option<u64>,
    /// Largest arrival time the grid explores.
    pub horizon: TimePoint,
    /// Guard against accidentally exhausting a large graph.
    pub node_limit: usize,
}

impl OracleOptions {
    pub fn new(horizon: TimePoint) -> Self {
        OracleOptions {
            allow_wait: false,
            max_wait_ticks: None,
            horizon,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }

    pub fn with_wait(horizon: TimePoint) -> Self {
        OracleOptions {
            allow_wait: true,
            ..Self::new(horizon)
        }
    }
}

/// Oracle verdict: arrival and path are both present or both absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub arrival: Option<TimePoint>,
    pub path: Option<Vec<NodeId>>,
    /// Grid cells reached; an effort indicator, not a contract.
    pub explored: u64,
}

/// Static oracle verdict (lengths are signed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticOracleResult {
    pub length: Option<i64>,
    pub path: Option<Vec<NodeId>>,
    pub explored: u64,
}

/// Exhaustive earliest arrival at `target` when leaving `source` at `t0`,
/// minimised over every timed walk that stays within the horizon.
///
/// Cell `(v, t)` is marked when some walk leaves `source` at `t0` and is at
/// `v` exactly at time `t`; cells are filled in ascending time, with a
/// same-time worklist for zero-cost edges. When waiting is enabled, each
/// cell also feeds `(v, t + 1)`, tracking the smallest consecutive-wait
/// run so a finite `max_wait_ticks` can be honoured exactly.
pub fn fastest_arrival(
    g: &Graph,
    source: NodeId,
    target: NodeId,
    t0: TimePoint,
    opts: &OracleOptions,
) -> Result<OracleResult, EngineError> {
    if g.node_count() > opts.node_limit {
        return Err(EngineError::TooLarge {
            nodes: g.node_count(),
            limit: opts.node_limit,
        });
    }
    if opts.horizon < t0 {
        return Ok(OracleResult {
            arrival: None,
            path: None,
            explored: 0,
        });
    }

    let n = g.node_count();
    let span = (opts.horizon.ticks() - t0.ticks() + 1) as usize;
    let cell = |v: NodeId, t: u64| -> usize { v * span + (t - t0.ticks()) as usize };

    // run[cell] = Some(r): reachable with at most r consecutive waits just
    // taken. Edge arrivals reset the run to 0, which dominates.
    let mut run: Vec<Option<u64>> = vec![None; n * span];
    let mut parent: Vec<Option<(NodeId, u64)>> = vec![None; n * span];
    let wait_cap = match (opts.allow_wait, opts.max_wait_ticks) {
        (false, _) => None,
        (true, cap) => Some(cap.unwrap_or(u64::MAX)),
    };

    run[cell(source, t0.ticks())] = Some(0);
    for t in t0.ticks()..=opts.horizon.ticks() {
        // Same-time worklist: zero-cost edges propagate within time t.
        let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| run[cell(v, t)].is_some()).collect();
        let mut queued = vec![false; n];
        for &v in &queue {
            queued[v] = true;
        }
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            let time = TimePoint::new(t);
            for &e in g.out_edges(v) {
                let edge = g.edge(e);
                let dur = edge.cost.evaluate(time);
                let Some(t2) = time.checked_add(dur) else {
                    continue;
                };
                if t2 > opts.horizon {
                    continue;
                }
                let c = cell(edge.to, t2.ticks());
                if run[c].is_none_or(|r| r > 0) {
                    let first = run[c].is_none();
                    run[c] = Some(0);
                    if first {
                        parent[c] = Some((v, t));
                    }
                    if t2.ticks() == t && !queued[edge.to] {
                        queue.push_back(edge.to);
                        queued[edge.to] = true;
                    }
                }
            }
            if let Some(cap) = wait_cap {
                let r = run[cell(v, t)].expect("queued cell is reached");
                if r < cap && t < opts.horizon.ticks() {
                    let c = cell(v, t + 1);
                    if run[c].is_none_or(|prev| prev > r + 1) {
                        if run[c].is_none() {
                            parent[c] = Some((v, t));
                        }
                        run[c] = Some(r + 1);
                    }
                }
            }
        }
    }

    let explored = run.iter().filter(|r| r.is_some()).count() as u64;
    let arrival_tick =
        (t0.ticks()..=opts.horizon.ticks()).find(|&t| run[cell(target, t)].is_some());
    let Some(at) = arrival_tick else {
        return Ok(OracleResult {
            arrival: None,
            path: None,
            explored,
        });
    };

    // Reconstruct, collapsing consecutive waiting repeats of a node.
    let mut rev = vec![target];
    let mut cur = (target, at);
    while let Some(prev) = parent[cell(cur.0, cur.1)] {
        if prev.0 != *rev.last().unwrap() {
            rev.push(prev.0);
        }
        cur = prev;
    }
    debug_assert_eq!(cur.0, source);
    if *rev.last().unwrap() != source {
        rev.push(source);
    }
    rev.reverse();
    Ok(OracleResult {
        arrival: Some(TimePoint::new(at)),
        path: Some(rev),
        explored,
    })
}

/// Exhaustive static shortest path over simple paths.
pub fn static_shortest(
    g: &StaticGraph,
    source: NodeId,
    target: NodeId,
) -> Result<StaticOracleResult, EngineError> {
    static_shortest_bounded(g, source, target, DEFAULT_NODE_LIMIT)
}

pub fn static_shortest_bounded(
    g: &StaticGraph,
    source: NodeId,
    target: NodeId,
    node_limit: usize,
) -> Result<StaticOracleResult, EngineError> {
    if g.node_count() > node_limit {
        return Err(EngineError::TooLarge {
            nodes: g.node_count(),
            limit: node_limit,
        });
    }
    let mut best: Option<(i64, Vec<NodeId>)> = None;
    let mut on_path = vec![false; g.node_count()];
    let mut stack = vec![source];
    let mut explored = 0u64;
    on_path[source] = true;
    dfs(
        g,
        source,
        target,
        0,
        &mut on_path,
        &mut stack,
        &mut best,
        &mut explored,
    );
    let (length, path) = match best {
        Some((l, p)) => (Some(l), Some(p)),
        None => (None, None),
    };
    Ok(StaticOracleResult {
        length,
        path,
        explored,
    })
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &StaticGraph,
    v: NodeId,
    target: NodeId,
    len: i64,
    on_path: &mut Vec<bool>,
    stack: &mut Vec<NodeId>,
    best: &mut Option<(i64, Vec<NodeId>)>,
    explored: &mut u64,
) {
    *explored += 1;
    if v == target && best.as_ref().is_none_or(|(b, _)| len < *b) {
        *best = Some((len, stack.clone()));
        // Keep going: with negative edges a longer simple path may be
        // shorter in cost.
    }
    for &e in g.out_edges(v) {
        let edge = g.edge(e);
        if on_path[edge.to] {
            continue;
        }
        on_path[edge.to] = true;
        stack.push(edge.to);
        dfs(
            g,
            edge.to,
            target,
            len + edge.cost,
            on_path,
            stack,
            best,
            explored,
        );
        stack.pop();
        on_path[edge.to] = false;
    }
}
