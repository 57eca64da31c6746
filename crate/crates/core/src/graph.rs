//! Directed graph with a travel-time function per edge.
//!
//! Nodes are dense indices in `0..node_count`. Parallel edges and self-loops
//! are permitted (self-loops never lie on a fastest path since costs are
//! non-negative, but no algorithm may choke on them). A graph is immutable
//! after construction and safe to share across concurrent queries.

use std::sync::OnceLock;

use crate::func::{FifoWitness, TravelTimeFunction};
use crate::time::{DurationTicks, TimePoint};

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: NodeId,
    pub to: NodeId,
    pub cost: TravelTimeFunction,
}

#[derive(Clone, Debug)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    tick_size: u64,
    steady_from: TimePoint,
    fifo: OnceLock<Option<(EdgeId, FifoWitness)>>,
}

impl Graph {
    pub fn new(node_count: usize, edges: Vec<Edge>) -> Self {
        Self::with_tick(node_count, edges, 1)
    }

    /// `tick_size` declares how much wall time one tick represents. It is
    /// carried through file formats and result documents but never enters
    /// any arithmetic.
    pub fn with_tick(node_count: usize, edges: Vec<Edge>, tick_size: u64) -> Self {
        let mut out = vec![Vec::new(); node_count];
        let mut steady_from = TimePoint::ZERO;
        for (id, edge) in edges.iter().enumerate() {
            if edge.from < node_count {
                out[edge.from].push(id);
            }
            steady_from = steady_from.max(edge.cost.steady_from());
        }
        Graph {
            node_count,
            edges,
            out,
            tick_size,
            steady_from,
            fifo: OnceLock::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out[v]
    }

    pub fn tick_size(&self) -> u64 {
        self.tick_size
    }

    /// First time from which every cost function in the graph is constant.
    pub fn steady_from(&self) -> TimePoint {
        self.steady_from
    }

    /// Saturating sum over edges of each function's maximum value; feeds the
    /// default expansion horizon.
    pub fn max_duration_sum(&self) -> DurationTicks {
        let mut sum: u64 = 0;
        for edge in &self.edges {
            sum = sum.saturating_add(edge.cost.max_travel_time().ticks());
        }
        DurationTicks::new(sum)
    }

    /// Whole-graph FIFO check, computed once and cached: the lowest-id edge
    /// whose cost function violates FIFO, with its witness.
    pub fn fifo_violation(&self) -> Option<&(EdgeId, FifoWitness)> {
        self.fifo
            .get_or_init(|| {
                self.edges
                    .iter()
                    .enumerate()
                    .find_map(|(id, edge)| edge.cost.check_fifo().witness.map(|w| (id, w)))
            })
            .as_ref()
    }

    pub fn is_fifo(&self) -> bool {
        self.fifo_violation().is_none()
    }

    /// Structural validation. A graph with an empty issue list satisfies
    /// every `Graph` and `TravelTimeFunction` invariant.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        for (id, edge) in self.edges.iter().enumerate() {
            if edge.from >= self.node_count {
                issues.push(ValidationIssue::EndpointOutOfRange {
                    edge: id,
                    node: edge.from,
                });
            }
            if edge.to >= self.node_count {
                issues.push(ValidationIssue::EndpointOutOfRange {
                    edge: id,
                    node: edge.to,
                });
            }
            match &edge.cost {
                TravelTimeFunction::Constant(_) => {}
                TravelTimeFunction::PiecewiseConstant(pieces) => {
                    if pieces.is_empty() {
                        issues.push(ValidationIssue::EmptyProfile { edge: id });
                    } else if pieces[0].0 != TimePoint::ZERO {
                        issues.push(ValidationIssue::FirstBreakpointNonZero { edge: id });
                    }
                    check_increasing(id, pieces, &mut issues);
                }
                TravelTimeFunction::PiecewiseLinear(samples) => {
                    if samples.is_empty() {
                        issues.push(ValidationIssue::EmptyProfile { edge: id });
                    }
                    check_increasing(id, samples, &mut issues);
                }
            }
        }
        ValidationReport { issues }
    }
}

fn check_increasing(
    id: EdgeId,
    points: &[(TimePoint, DurationTicks)],
    issues: &mut Vec<ValidationIssue>,
) {
    for (i, w) in points.windows(2).enumerate() {
        if w[1].0 <= w[0].0 {
            issues.push(ValidationIssue::BreakpointsNotIncreasing {
                edge: id,
                index: i + 1,
            });
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    EndpointOutOfRange { edge: EdgeId, node: NodeId },
    EmptyProfile { edge: EdgeId },
    BreakpointsNotIncreasing { edge: EdgeId, index: usize },
    FirstBreakpointNonZero { edge: EdgeId },
}

impl std::fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ValidationIssue::EndpointOutOfRange { edge, node } => {
                write!(f, "edge {edge}: endpoint {node} is out of range")
            }
            ValidationIssue::EmptyProfile { edge } => {
                write!(f, "edge {edge}: profile has no breakpoints")
            }
            ValidationIssue::BreakpointsNotIncreasing { edge, index } => {
                write!(f, "edge {edge}: breakpoint {index} does not increase")
            }
            ValidationIssue::FirstBreakpointNonZero { edge } => {
                write!(f, "edge {edge}: first breakpoint must start at tick 0")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}
