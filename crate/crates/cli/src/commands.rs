//! Command implementations. Each returns the process exit code together
//! with what it wants printed, so tests can drive the exact surface
//! without spawning a process.
//!
//! Exit codes: 0 success, 1 usage/parse/other error, 2 unreachable,
//! 3 FIFO violation, 4 truncated expansion.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use tdroute_core::corpus::{gen_random, RandomGraphSpec};
use tdroute_core::search;
use tdroute_core::state_graph::{self, ExpandOptions};
use tdroute_core::static_graph::StaticGraph;
use tdroute_core::td::{self, RouteResult, TdQuery};
use tdroute_core::{EngineError, NodeId, TimePoint};

use crate::doc::*;
use crate::fileio::{parse_graph, serialize_instance, NamedGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNREACHABLE: i32 = 2;
pub const EXIT_NON_FIFO: i32 = 3;
pub const EXIT_TRUNCATED: i32 = 4;

/// Environment variable overriding the default expansion horizon when no
/// `--horizon` flag is given.
pub const HORIZON_ENV: &str = "TDROUTE_HORIZON";

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn usage(message: impl Into<String>) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Dijkstra,
    BellmanFord,
    Astar,
    Bidir,
    NaiveTd,
    TdFifo,
    TdAstar,
    StateGraph,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Dijkstra => "dijkstra",
            Algo::BellmanFord => "bellman-ford",
            Algo::Astar => "astar",
            Algo::Bidir => "bidir",
            Algo::NaiveTd => "naive-td",
            Algo::TdFifo => "td-fifo",
            Algo::TdAstar => "td-astar",
            Algo::StateGraph => "state-graph",
        }
    }

    fn is_static(self) -> bool {
        matches!(
            self,
            Algo::Dijkstra | Algo::BellmanFord | Algo::Astar | Algo::Bidir
        )
    }

    fn needs_target(self) -> bool {
        matches!(
            self,
            Algo::Astar | Algo::Bidir | Algo::TdAstar | Algo::StateGraph
        )
    }
}

#[derive(Args, Debug)]
pub struct RouteArgs {
    /// Graph file.
    #[arg(long)]
    pub graph: PathBuf,
    /// Source node name.
    #[arg(long)]
    pub source: String,
    /// Target node name (required for astar, bidir, td-astar, state-graph).
    #[arg(long)]
    pub target: Option<String>,
    /// Departure time in ticks.
    #[arg(long, default_value_t = 0)]
    pub t0: u64,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Allow one-tick waiting steps (state-graph only).
    #[arg(long)]
    pub allow_wait: bool,
    /// Expansion horizon in ticks (state-graph only; TDROUTE_HORIZON is the
    /// fallback, then a generous graph-derived default).
    #[arg(long)]
    pub horizon: Option<u64>,
    /// State cap for the expansion (state-graph only).
    #[arg(long)]
    pub max_states: Option<usize>,
}

pub fn route(args: &RouteArgs) -> Output {
    let named = match load(&args.graph) {
        Ok(n) => n,
        Err(out) => return out,
    };
    let Some(source) = named.node_id(&args.source) else {
        return Output::usage(format!("unknown source node `{}`", args.source));
    };
    let target = match &args.target {
        None => {
            if args.algo.needs_target() {
                return Output::usage(format!("--algo {} requires --target", args.algo.name()));
            }
            None
        }
        Some(name) => match named.node_id(name) {
            Some(id) => Some(id),
            None => return Output::usage(format!("unknown target node `{name}`")),
        },
    };
    let horizon = match effective_horizon(args.horizon) {
        Ok(h) => h,
        Err(out) => return out,
    };
    if args.max_states == Some(0) {
        return Output::usage("--max-states must be positive");
    }

    let t0 = TimePoint::new(args.t0);
    let query = QueryEcho {
        graph: args.graph.display().to_string(),
        algo: args.algo.name().to_string(),
        source: args.source.clone(),
        target: args.target.clone(),
        t0: args.t0,
        allow_wait: args.allow_wait,
        horizon: args.horizon,
        max_states: args.max_states,
        tick: named.graph.tick_size(),
    };
    let mut doc = ResultDocument {
        query,
        outcome: String::new(),
        arrival: None,
        length: None,
        route: None,
        arrivals: None,
        distances: None,
        error: None,
        fifo: if args.algo.is_static() {
            None
        } else {
            Some(fifo_doc(&named))
        },
        stats: StatsDoc::default(),
    };

    let code = if args.algo.is_static() {
        run_static(args.algo, &named, source, target, t0, &mut doc)
    } else {
        run_td(args, &named, source, target, t0, horizon, &mut doc)
    };
    Output {
        code,
        stdout: doc.render(),
        stderr: String::new(),
    }
}

fn run_static(
    algo: Algo,
    named: &NamedGraph,
    source: NodeId,
    target: Option<NodeId>,
    t0: TimePoint,
    doc: &mut ResultDocument,
) -> i32 {
    let view = StaticGraph::snapshot_at(&named.graph, t0);
    match algo {
        Algo::Dijkstra | Algo::BellmanFord => {
            let labels = if algo == Algo::Dijkstra {
                search::dijkstra(&view, source)
            } else {
                search::bellman_ford(&view, source)
            };
            let labels = match labels {
                Ok(l) => l,
                Err(e) => return fail(doc, &e),
            };
            doc.stats.settled = Some(labels.stats.settled);
            doc.stats.relaxations = Some(labels.stats.relaxations);
            match target {
                Some(f) => match labels.path_to(f) {
                    Some(path) => {
                        doc.outcome = "route".into();
                        doc.length = Some(path.length);
                        doc.route = Some(static_route_doc(named, &path));
                        EXIT_OK
                    }
                    None => {
                        doc.outcome = "unreachable".into();
                        EXIT_UNREACHABLE
                    }
                },
                None => {
                    doc.outcome = "distances".into();
                    doc.distances = Some(
                        (0..named.graph.node_count())
                            .map(|v| DistanceEntry {
                                node: named.name(v).to_string(),
                                distance: labels.dist[v],
                            })
                            .collect(),
                    );
                    EXIT_OK
                }
            }
        }
        Algo::Astar | Algo::Bidir => {
            let f = target.expect("target checked by caller");
            let result = if algo == Algo::Astar {
                search::astar(&view, source, f, &search::ZeroHeuristic)
            } else {
                search::bidirectional_dijkstra(&view, source, f)
            };
            match result {
                Ok(path) => {
                    doc.outcome = "route".into();
                    doc.length = Some(path.length);
                    doc.route = Some(static_route_doc(named, &path));
                    EXIT_OK
                }
                Err(EngineError::Unreachable) => {
                    doc.outcome = "unreachable".into();
                    EXIT_UNREACHABLE
                }
                Err(e) => fail(doc, &e),
            }
        }
        _ => unreachable!("static dispatch"),
    }
}

fn run_td(
    args: &RouteArgs,
    named: &NamedGraph,
    source: NodeId,
    target: Option<NodeId>,
    t0: TimePoint,
    horizon: Option<TimePoint>,
    doc: &mut ResultDocument,
) -> i32 {
    let g = &named.graph;
    match args.algo {
        Algo::NaiveTd | Algo::TdFifo => {
            let q = TdQuery::new(source, target, t0);
            let labels = if args.algo == Algo::NaiveTd {
                td::naive_td_dijkstra(g, &q)
            } else {
                td::td_dijkstra_fifo(g, &q)
            };
            let labels = match labels {
                Ok(l) => l,
                Err(e) => return fail(doc, &e),
            };
            doc.stats.settled = Some(labels.stats.settled);
            doc.stats.relaxations = Some(labels.stats.relaxations);
            match target {
                Some(f) => match td::extract_route(&labels, f) {
                    Ok(route) => {
                        doc.outcome = "route".into();
                        doc.arrival = Some(route.arrival.ticks());
                        doc.route = Some(route_doc(named, &route));
                        EXIT_OK
                    }
                    Err(e) => fail(doc, &e),
                },
                None => {
                    doc.outcome = "arrivals".into();
                    doc.arrivals = Some(
                        (0..g.node_count())
                            .map(|v| ArrivalEntry {
                                node: named.name(v).to_string(),
                                arrival: labels.arrival[v].map(|t| t.ticks()),
                            })
                            .collect(),
                    );
                    EXIT_OK
                }
            }
        }
        Algo::TdAstar => {
            let q = TdQuery::new(source, target, t0);
            match td::td_astar(g, &q) {
                Ok(route) => {
                    doc.outcome = "route".into();
                    doc.arrival = Some(route.arrival.ticks());
                    doc.route = Some(route_doc(named, &route));
                    EXIT_OK
                }
                Err(e) => fail(doc, &e),
            }
        }
        Algo::StateGraph => {
            let opts = ExpandOptions {
                allow_wait: args.allow_wait,
                horizon,
                max_states: args.max_states.unwrap_or(1_000_000),
                revisit_cutoff: true,
            };
            let sg = state_graph::expand(g, source, t0, &opts);
            doc.stats.states = Some(sg.stats.state_count);
            doc.stats.transitions = Some(sg.stats.transition_count);
            doc.stats.pruned = Some(sg.stats.pruned);
            doc.stats.truncated = sg.stats.truncated;
            let q = TdQuery::new(source, target, t0);
            match state_graph::solve_via_state_graph(g, &q, &opts) {
                Ok(route) => {
                    doc.outcome = "route".into();
                    doc.arrival = Some(route.arrival.ticks());
                    doc.route = Some(route_doc(named, &route));
                    EXIT_OK
                }
                Err(e) => fail(doc, &e),
            }
        }
        _ => unreachable!("td dispatch"),
    }
}

/// Maps an engine error to document outcome and exit code.
fn fail(doc: &mut ResultDocument, e: &EngineError) -> i32 {
    match e {
        EngineError::Unreachable => {
            doc.outcome = "unreachable".into();
            EXIT_UNREACHABLE
        }
        EngineError::NonFifoEdge { .. } => {
            doc.outcome = "non-fifo".into();
            doc.error = Some(e.to_string());
            EXIT_NON_FIFO
        }
        EngineError::Truncated => {
            doc.outcome = "truncated".into();
            doc.error = Some(e.to_string());
            EXIT_TRUNCATED
        }
        other => {
            doc.outcome = "error".into();
            doc.error = Some(other.to_string());
            EXIT_USAGE
        }
    }
}

#[derive(Args, Debug)]
pub struct CheckFifoArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Check a single edge id instead of the whole graph.
    #[arg(long)]
    pub edge: Option<usize>,
}

pub fn check_fifo(args: &CheckFifoArgs) -> Output {
    let named = match load(&args.graph) {
        Ok(n) => n,
        Err(out) => return out,
    };
    let g = &named.graph;
    let edge_ids: Vec<usize> = match args.edge {
        Some(e) if e >= g.edge_count() => {
            return Output::usage(format!(
                "edge {e} out of range (graph has {})",
                g.edge_count()
            ))
        }
        Some(e) => vec![e],
        None => (0..g.edge_count()).collect(),
    };
    let mut violations = Vec::new();
    for e in &edge_ids {
        if let Some(w) = g.edge(*e).cost.check_fifo().witness {
            violations.push(witness_doc(&named, *e, &w));
        }
    }
    let code = if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_NON_FIFO
    };
    let doc = FifoCheckDocument {
        graph: args.graph.display().to_string(),
        checked_edges: edge_ids.len(),
        violations,
    };
    Output {
        code,
        stdout: doc.render(),
        stderr: String::new(),
    }
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub source: String,
    #[arg(long, default_value_t = 0)]
    pub t0: u64,
    #[arg(long)]
    pub allow_wait: bool,
    /// Emit DOT instead of the state list (stats go to stderr).
    #[arg(long)]
    pub dot: bool,
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long)]
    pub max_states: Option<usize>,
}

pub fn expand(args: &ExpandArgs) -> Output {
    let named = match load(&args.graph) {
        Ok(n) => n,
        Err(out) => return out,
    };
    let Some(source) = named.node_id(&args.source) else {
        return Output::usage(format!("unknown source node `{}`", args.source));
    };
    let horizon = match effective_horizon(args.horizon) {
        Ok(h) => h,
        Err(out) => return out,
    };
    if args.max_states == Some(0) {
        return Output::usage("--max-states must be positive");
    }
    let opts = ExpandOptions {
        allow_wait: args.allow_wait,
        horizon,
        max_states: args.max_states.unwrap_or(1_000_000),
        revisit_cutoff: true,
    };
    let sg = state_graph::expand(&named.graph, source, TimePoint::new(args.t0), &opts);
    let stats_line = format!(
        "stats states={} transitions={} pruned={} truncated={}\n",
        sg.stats.state_count, sg.stats.transition_count, sg.stats.pruned, sg.stats.truncated
    );
    let (stdout, stderr) = if args.dot {
        (state_graph::export_dot(&sg, Some(&named.names)), stats_line)
    } else {
        let mut out = String::new();
        for s in &sg.states {
            let _ = writeln!(out, "state {},{}", named.name(s.node), s.time);
        }
        out.push_str(&stats_line);
        (out, String::new())
    };
    Output {
        code: if sg.stats.truncated {
            EXIT_TRUNCATED
        } else {
            EXIT_OK
        },
        stdout,
        stderr,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    RandomFifo,
    PseudoPoly,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Comma-separated sizes: node counts for random-fifo, k for
    /// pseudo-poly.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

pub fn bench(args: &BenchArgs) -> Output {
    if args.sizes.is_empty() {
        return Output::usage("--sizes must list at least one size");
    }
    let mut out = String::new();
    match args.suite {
        Suite::RandomFifo => {
            let _ = writeln!(
                out,
                "{:>6} {:>6} {:>16} {:>9} {:>10}",
                "nodes", "edges", "checksum", "settled", "gen+run_us"
            );
            for (i, &n) in args.sizes.iter().enumerate() {
                if n < 2 {
                    return Output::usage("random-fifo sizes must be at least 2");
                }
                let started = Instant::now();
                let inst = gen_random(&RandomGraphSpec::fifo(n as usize, args.seed + i as u64));
                let checksum = fnv1a(serialize_instance(&inst).as_bytes());
                let mut settled = 0u64;
                for qi in 0..3u64 {
                    let q = TdQuery::new(
                        (qi as usize) % inst.graph.node_count(),
                        None,
                        TimePoint::new(qi * 5),
                    );
                    let labels = td::td_dijkstra_fifo(&inst.graph, &q).expect("instance is FIFO");
                    settled += labels.stats.settled;
                }
                let us = started.elapsed().as_micros();
                let _ = writeln!(
                    out,
                    "{n:>6} {:>6} {checksum:>16x} {settled:>9} {us:>10}",
                    inst.graph.edge_count()
                );
            }
        }
        Suite::PseudoPoly => {
            let _ = writeln!(
                out,
                "{:>6} {:>8} {:>12} {:>8} {:>10}",
                "k", "states", "transitions", "arrival", "expand_us"
            );
            for &k in &args.sizes {
                if k == 0 {
                    return Output::usage("pseudo-poly sizes must be at least 1");
                }
                let g = state_graph::pseudo_poly_family(k).expect("k >= 1");
                let started = Instant::now();
                let sg = state_graph::expand(&g, 0, TimePoint::ZERO, &ExpandOptions::default());
                let q = TdQuery::new(0, Some(2), TimePoint::ZERO);
                let route = state_graph::solve_via_state_graph(&g, &q, &ExpandOptions::default())
                    .expect("family target is reachable");
                let us = started.elapsed().as_micros();
                let _ = writeln!(
                    out,
                    "{k:>6} {:>8} {:>12} {:>8} {us:>10}",
                    sg.stats.state_count,
                    sg.stats.transition_count,
                    route.arrival.ticks()
                );
            }
        }
    }
    Output {
        code: EXIT_OK,
        stdout: out,
        stderr: String::new(),
    }
}

// ---- shared helpers ----

fn load(path: &PathBuf) -> Result<NamedGraph, Output> {
    let text = std::fs::read_to_string(path).map_err(|e| Output {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: cannot read {}: {e}\n", path.display()),
    })?;
    parse_graph(&text).map_err(|e| Output {
        code: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {}: {e}\n", path.display()),
    })
}

fn effective_horizon(flag: Option<u64>) -> Result<Option<TimePoint>, Output> {
    if let Some(h) = flag {
        return Ok(Some(TimePoint::new(h)));
    }
    match std::env::var(HORIZON_ENV) {
        Ok(v) => match v.parse::<u64>() {
            Ok(h) => Ok(Some(TimePoint::new(h))),
            Err(_) => Err(Output::usage(format!(
                "{HORIZON_ENV} must be an integer tick count, got `{v}`"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn fifo_doc(named: &NamedGraph) -> FifoDoc {
    match named.graph.fifo_violation() {
        None => FifoDoc {
            is_fifo: true,
            witness: None,
        },
        Some(&(edge, w)) => FifoDoc {
            is_fifo: false,
            witness: Some(witness_doc(named, edge, &w)),
        },
    }
}

fn witness_doc(named: &NamedGraph, edge: usize, w: &tdroute_core::FifoWitness) -> FifoWitnessDoc {
    let e = named.graph.edge(edge);
    FifoWitnessDoc {
        edge,
        from: named.name(e.from).to_string(),
        to: named.name(e.to).to_string(),
        t1: w.t1.ticks(),
        t2: w.t2.ticks(),
        a1: w.a1.ticks(),
        a2: w.a2.ticks(),
    }
}

fn route_doc(named: &NamedGraph, route: &RouteResult) -> RouteDoc {
    RouteDoc {
        nodes: route
            .nodes
            .iter()
            .map(|&v| named.name(v).to_string())
            .collect(),
        edge_events: route
            .edge_events
            .iter()
            .map(|ev| {
                let e = named.graph.edge(ev.edge);
                EdgeEventDoc {
                    edge: ev.edge,
                    from: named.name(e.from).to_string(),
                    to: named.name(e.to).to_string(),
                    depart: ev.depart.ticks(),
                    arrive: ev.arrive.ticks(),
                }
            })
            .collect(),
    }
}

fn static_route_doc(named: &NamedGraph, path: &search::PathResult) -> RouteDoc {
    RouteDoc {
        nodes: path
            .nodes
            .iter()
            .map(|&v| named.name(v).to_string())
            .collect(),
        edge_events: Vec::new(),
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
