//! State-transition expansion: exact fastest paths for arbitrary costs.
//!
//! States are `(node, time)` pairs. There is a transition from `(u, t)` to
//! `(v, t + c(uv, t))` for every edge `uv`, with cost `c(uv, t)`; costs in
//! the expanded graph are positive and no longer time-dependent, so a
//! static Dijkstra over it finds exact fastest paths even when the original
//! cost functions are non-FIFO. Only states reachable from the initial
//! state `(s, t0)` are materialised.
//!
//! The reachable closure need not be finite in time: a cycle keeps
//! generating later copies of the same nodes forever (its size is
//! pseudo-polynomial at best, see [`pseudo_poly_family`]). Three guards
//! bound it:
//!
//! * a horizon cap and a state-count cap, which mark the result truncated;
//! * the steady-regime revisit cutoff: once a departure time has passed the
//!   last breakpoint of every cost function in the graph, every function is
//!   constant forever, and a successor state for a node that was already
//!   reached at an earlier time is skipped. On a FIFO graph the earlier
//!   state dominates (departing earlier never arrives later), so the cutoff
//!   is exact and does not mark truncation. On a non-FIFO graph it is a
//!   completeness cutoff and the expansion is marked truncated. Waiting
//!   transitions past the steady point are dropped unconditionally: with
//!   all functions constant, waiting only delays.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::EngineError;
use crate::func::TravelTimeFunction;
use crate::graph::{Edge, EdgeId, Graph, NodeId};
use crate::search::dijkstra;
use crate::static_graph::StaticGraph;
use crate::td::{EdgeEvent, RouteResult, TdQuery};
use crate::time::{DurationTicks, TimePoint};

/// One expansion state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub node: NodeId,
    pub time: TimePoint,
}

impl State {
    fn key(self) -> (TimePoint, NodeId) {
        (self.time, self.node)
    }
}

/// Transition between two states, by index into [`StateGraph::states`].
/// `via = None` is a one-tick waiting step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    pub via: Option<EdgeId>,
    pub cost: DurationTicks,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpandStats {
    pub state_count: usize,
    pub transition_count: usize,
    /// The expansion is incomplete: a cap cut it off, or the revisit cutoff
    /// fired on a non-FIFO graph (where it is not provably safe).
    pub truncated: bool,
    /// Successor states skipped by the steady-regime revisit cutoff.
    pub pruned: u64,
}

/// Expansion result. States are sorted by `(time, node)`; transitions are
/// sorted by `(from, to, via)`. Both orders are canonical, so equal inputs
/// produce identical state graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateGraph {
    pub initial: State,
    pub states: Vec<State>,
    pub transitions: Vec<Transition>,
    pub stats: ExpandStats,
}

#[derive(Clone, Copy, Debug)]
pub struct ExpandOptions {
    /// Add one-tick waiting transitions `(v, t) -> (v, t + 1)`.
    pub allow_wait: bool,
    /// Largest state time to materialise; `None` derives
    /// [`default_horizon`] from the graph.
    pub horizon: Option<TimePoint>,
    /// Hard cap on the number of states.
    pub max_states: usize,
    /// Steady-regime revisit cutoff (see module docs). On by default;
    /// disable to get the raw horizon-bounded closure.
    pub revisit_cutoff: bool,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions {
            allow_wait: false,
            horizon: None,
            max_states: 1_000_000,
            revisit_cutoff: true,
        }
    }
}

/// Default expansion horizon: `t0 + 10 x (sum of every edge's maximum
/// value)`. Generous at desk scale, finite by construction.
pub fn default_horizon(g: &Graph, t0: TimePoint) -> TimePoint {
    let span = g.max_duration_sum().ticks().saturating_mul(10);
    t0.saturating_add(DurationTicks::new(span))
}

/// Expands the states reachable from `(source, t0)`.
///
/// States are settled in `(time, node)` order, so the enumeration is
/// deterministic. Truncation is reported in the stats, never thrown.
pub fn expand(g: &Graph, source: NodeId, t0: TimePoint, opts: &ExpandOptions) -> StateGraph {
    let horizon = opts.horizon.unwrap_or_else(|| default_horizon(g, t0));
    let steady = g.steady_from();
    let fifo = g.is_fifo();

    let mut seen: HashSet<(NodeId, u64)> = HashSet::new();
    let mut min_time: Vec<Option<TimePoint>> = vec![None; g.node_count()];
    let mut raw_states: Vec<State> = Vec::new();
    let mut raw_transitions: Vec<(State, State, Option<EdgeId>, DurationTicks)> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(TimePoint, NodeId)>> = BinaryHeap::new();

    let mut truncated = false;
    let mut pruned: u64 = 0;

    let initial = State {
        node: source,
        time: t0,
    };
    seen.insert((source, t0.ticks()));
    min_time[source] = Some(t0);
    raw_states.push(initial);
    heap.push(Reverse(initial.key()));

    'expansion: while let Some(Reverse((time, node))) = heap.pop() {
        let from = State { node, time };
        let mut successors: Vec<(State, Option<EdgeId>, DurationTicks)> = Vec::new();
        for &e in g.out_edges(node) {
            let edge = g.edge(e);
            let dur = edge.cost.evaluate(time);
            match time.checked_add(dur) {
                Some(t) => successors.push((
                    State {
                        node: edge.to,
                        time: t,
                    },
                    Some(e),
                    dur,
                )),
                None => truncated = true, // beyond any horizon
            }
        }
        if opts.allow_wait {
            let tick = DurationTicks::new(1);
            if let Some(t) = time.checked_add(tick) {
                successors.push((State { node, time: t }, None, tick));
            }
        }

        for (succ, via, cost) in successors {
            if succ.time > horizon {
                truncated = true;
                continue;
            }
            if seen.contains(&(succ.node, succ.time.ticks())) {
                raw_transitions.push((from, succ, via, cost));
                continue;
            }
            if opts.revisit_cutoff
                && time >= steady
                && min_time[succ.node].is_some_and(|t| t <= succ.time)
            {
                pruned += 1;
                // Skipping a waiting step here is always safe (every
                // function is already constant); skipping a real edge is
                // only provably safe under FIFO.
                if via.is_some() && !fifo {
                    truncated = true;
                }
                continue;
            }
            if raw_states.len() >= opts.max_states {
                truncated = true;
                break 'expansion;
            }
            seen.insert((succ.node, succ.time.ticks()));
            min_time[succ.node] = Some(match min_time[succ.node] {
                Some(t) => t.min(succ.time),
                None => succ.time,
            });
            raw_states.push(succ);
            raw_transitions.push((from, succ, via, cost));
            heap.push(Reverse(succ.key()));
        }
    }

    // Canonical order: states by (time, node), transitions by state index.
    raw_states.sort_by_key(|s| s.key());
    let index: HashMap<(NodeId, u64), usize> = raw_states
        .iter()
        .enumerate()
        .map(|(i, s)| ((s.node, s.time.ticks()), i))
        .collect();
    let mut transitions: Vec<Transition> = raw_transitions
        .into_iter()
        .map(|(from, to, via, cost)| Transition {
            from: index[&(from.node, from.time.ticks())],
            to: index[&(to.node, to.time.ticks())],
            via,
            cost,
        })
        .collect();
    transitions.sort_by_key(|t| (t.from, t.to, t.via));

    let stats = ExpandStats {
        state_count: raw_states.len(),
        transition_count: transitions.len(),
        truncated,
        pruned,
    };
    StateGraph {
        initial,
        states: raw_states,
        transitions,
        stats,
    }
}

/// Fastest path by static Dijkstra over the expanded state graph.
///
/// The answer is the reachable target state `(target, t)` with minimal `t`,
/// projected back to a timed route. `Truncated` is returned only when the
/// expansion was cut off before any target state appeared (the answer is
/// unknown, never silently wrong); `Unreachable` when the closure completed
/// without reaching the target.
pub fn solve_via_state_graph(
    g: &Graph,
    q: &TdQuery,
    opts: &ExpandOptions,
) -> Result<RouteResult, EngineError> {
    let target = q.target.ok_or(EngineError::TargetRequired)?;
    let sg = expand(g, q.source, q.t0, opts);

    // States are time-sorted, so the first match has minimal arrival.
    let Some(goal_idx) = sg.states.iter().position(|s| s.node == target) else {
        return Err(if sg.stats.truncated {
            EngineError::Truncated
        } else {
            EngineError::Unreachable
        });
    };
    let init_idx = sg
        .states
        .binary_search_by_key(&sg.initial.key(), |s| s.key())
        .expect("initial state is in the expansion");

    // The state graph has static positive costs: run the classic search.
    let static_view = StaticGraph::new(
        sg.states.len(),
        sg.transitions
            .iter()
            .map(|t| (t.from, t.to, t.cost.ticks() as i64))
            .collect(),
    );
    let dist = dijkstra(&static_view, init_idx).expect("state costs are non-negative");
    let path = dist
        .path_to(goal_idx)
        .expect("every state is reachable from the initial state");

    let mut nodes = vec![sg.states[init_idx].node];
    let mut edge_events = Vec::new();
    for &t_idx in &path.edges {
        let t = sg.transitions[t_idx];
        if let Some(edge) = t.via {
            edge_events.push(EdgeEvent {
                edge,
                depart: sg.states[t.from].time,
                arrive: sg.states[t.to].time,
            });
            nodes.push(sg.states[t.to].node);
        }
        // Waiting steps stay implicit: the next departure is later than
        // the previous arrival.
    }
    Ok(RouteResult {
        nodes,
        edge_events,
        arrival: sg.states[goal_idx].time,
    })
}

/// The three-node family whose state graph has Theta(k) states: `s <-> u`
/// with cost 1 both ways, and `s -> f` costing `2k` before time `k` and 1
/// from then on. Nodes are `s = 0`, `u = 1`, `f = 2`.
pub fn pseudo_poly_family(k: u64) -> Result<Graph, EngineError> {
    if k == 0 {
        return Err(EngineError::InvalidParameter("k must be at least 1"));
    }
    let one = TravelTimeFunction::Constant(DurationTicks::new(1));
    Ok(Graph::new(
        3,
        vec![
            Edge {
                from: 0,
                to: 1,
                cost: one.clone(),
            },
            Edge {
                from: 1,
                to: 0,
                cost: one,
            },
            Edge {
                from: 0,
                to: 2,
                cost: TravelTimeFunction::PiecewiseConstant(vec![
                    (TimePoint::ZERO, DurationTicks::new(2 * k)),
                    (TimePoint::new(k), DurationTicks::new(1)),
                ]),
            },
        ],
    ))
}

/// DOT rendering of a state graph: one node per state labelled
/// `"node,time"`, one edge per transition labelled with its cost (waiting
/// steps are labelled `wait`). Output is byte-deterministic.
pub fn export_dot(sg: &StateGraph, names: Option<&[String]>) -> String {
    let label = |n: NodeId| -> String {
        match names {
            Some(names) if n < names.len() => names[n].clone(),
            _ => format!("n{n}"),
        }
    };
    let mut out = String::from("digraph states {\n");
    out.push_str("  rankdir=LR;\n");
    for (i, s) in sg.states.iter().enumerate() {
        out.push_str(&format!(
            "  q{} [label=\"{},{}\"];\n",
            i,
            label(s.node),
            s.time
        ));
    }
    for t in &sg.transitions {
        let style = if t.via.is_some() {
            String::new()
        } else {
            String::from(", style=dashed")
        };
        out.push_str(&format!(
            "  q{} -> q{} [label=\"{}\"{}];\n",
            t.from, t.to, t.cost, style
        ));
    }
    out.push_str("}\n");
    out
}
