//! Graph text format.
//!
//! Line-oriented, whitespace-separated, `#` starts a comment. Nodes are
//! symbolic tokens mapped to dense ids in declaration order:
//!
//! ```text
//! # four-node example
//! td 4 4 tick 1
//! n s
//! n u
//! n v
//! n f
//! e s u const 1
//! e s v const 1
//! e u v const 1
//! e v f pwc 0:10,2:1
//! ```
//!
//! Cost specs: `const W`, `pwc t0:v0,t1:v1,...`, `pwl t0:v0,t1:v1,...`.
//! A parsed graph always passes structural validation; `serialize` renders
//! the canonical form, and parsing that form yields an identical graph.

use std::collections::HashMap;
use std::fmt;

use tdroute_core::{DurationTicks, Edge, Graph, NodeId, TimePoint, TravelTimeFunction};

/// A graph plus its symbolic node names.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub graph: Graph,
    pub names: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NamedGraph {
    pub fn new(graph: Graph, names: Vec<String>) -> Self {
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        NamedGraph {
            graph,
            names,
            index,
        }
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.names[id]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

type Token<'a> = (&'a str, usize); // text, 1-based column

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((&line[s..i], s + 1));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        let end = line.find('#').unwrap_or(line.len());
        tokens.push((line[s..end].trim_end(), s + 1));
    }
    tokens
}

pub fn parse_graph(text: &str) -> Result<NamedGraph, ParseError> {
    let mut header: Option<(usize, usize, u64)> = None;
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, NodeId> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let (kw, kw_col) = tokens[0];
        match kw {
            "td" => {
                if header.is_some() {
                    return err(line, kw_col, "duplicate header line");
                }
                if tokens.len() != 5 || tokens[3].0 != "tick" {
                    return err(line, kw_col, "expected: td <nodes> <edges> tick <size>");
                }
                let nodes = parse_num::<usize>(line, tokens[1], "node count")?;
                let edge_count = parse_num::<usize>(line, tokens[2], "edge count")?;
                let tick = parse_num::<u64>(line, tokens[4], "tick size")?;
                if tick == 0 {
                    return err(line, tokens[4].1, "tick size must be positive");
                }
                header = Some((nodes, edge_count, tick));
            }
            "n" => {
                if header.is_none() {
                    return err(line, kw_col, "node before header");
                }
                if tokens.len() != 2 {
                    return err(line, kw_col, "expected: n <name>");
                }
                let (name, col) = tokens[1];
                if index.contains_key(name) {
                    return err(line, col, format!("duplicate node name `{name}`"));
                }
                index.insert(name.to_string(), names.len());
                names.push(name.to_string());
            }
            "e" => {
                if header.is_none() {
                    return err(line, kw_col, "edge before header");
                }
                if tokens.len() != 5 {
                    return err(line, kw_col, "expected: e <from> <to> <kind> <spec>");
                }
                let from = lookup(line, tokens[1], &index)?;
                let to = lookup(line, tokens[2], &index)?;
                let cost = parse_cost(line, tokens[3], tokens[4])?;
                edges.push(Edge { from, to, cost });
                edge_lines.push(line);
            }
            _ => return err(line, kw_col, format!("unknown record `{kw}`")),
        }
    }

    let Some((node_count, edge_count, tick)) = header else {
        return err(1, 1, "missing header line (td <nodes> <edges> tick <size>)");
    };
    if names.len() != node_count {
        return err(
            1,
            1,
            format!("header declares {node_count} nodes, found {}", names.len()),
        );
    }
    if edges.len() != edge_count {
        return err(
            1,
            1,
            format!("header declares {edge_count} edges, found {}", edges.len()),
        );
    }

    let graph = Graph::with_tick(node_count, edges, tick);
    let report = graph.validate();
    if let Some(issue) = report.issues.first() {
        let line = match issue {
            tdroute_core::ValidationIssue::EndpointOutOfRange { edge, .. }
            | tdroute_core::ValidationIssue::EmptyProfile { edge }
            | tdroute_core::ValidationIssue::BreakpointsNotIncreasing { edge, .. }
            | tdroute_core::ValidationIssue::FirstBreakpointNonZero { edge } => {
                edge_lines.get(*edge).copied().unwrap_or(1)
            }
        };
        return err(line, 1, issue.to_string());
    }
    Ok(NamedGraph::new(graph, names))
}

fn lookup(
    line: usize,
    tok: Token<'_>,
    index: &HashMap<String, NodeId>,
) -> Result<NodeId, ParseError> {
    match index.get(tok.0) {
        Some(&id) => Ok(id),
        None => err(line, tok.1, format!("unknown node `{}`", tok.0)),
    }
}

fn parse_num<T: std::str::FromStr>(
    line: usize,
    tok: Token<'_>,
    what: &str,
) -> Result<T, ParseError> {
    tok.0
        .parse::<T>()
        .or_else(|_| err(line, tok.1, format!("invalid {what} `{}`", tok.0)))
}

fn parse_cost(
    line: usize,
    kind: Token<'_>,
    spec: Token<'_>,
) -> Result<TravelTimeFunction, ParseError> {
    match kind.0 {
        "const" => {
            let v = parse_num::<u64>(line, spec, "duration")?;
            Ok(TravelTimeFunction::Constant(DurationTicks::new(v)))
        }
        "pwc" | "pwl" => {
            let mut points = Vec::new();
            let mut col = spec.1;
            for part in spec.0.split(',') {
                let Some((t, v)) = part.split_once(':') else {
                    return err(line, col, format!("expected t:v pair, got `{part}`"));
                };
                let t = parse_num::<u64>(line, (t, col), "breakpoint time")?;
                let v = parse_num::<u64>(line, (v, col), "duration")?;
                points.push((TimePoint::new(t), DurationTicks::new(v)));
                col += part.len() + 1;
            }
            if kind.0 == "pwc" {
                Ok(TravelTimeFunction::PiecewiseConstant(points))
            } else {
                Ok(TravelTimeFunction::PiecewiseLinear(points))
            }
        }
        other => err(line, kind.1, format!("unknown cost kind `{other}`")),
    }
}

/// Canonical rendering; `parse_graph(serialize(g))` reproduces `g` exactly.
pub fn serialize(named: &NamedGraph) -> String {
    let g = &named.graph;
    let mut out = String::new();
    out.push_str(&format!(
        "td {} {} tick {}\n",
        g.node_count(),
        g.edge_count(),
        g.tick_size()
    ));
    for name in &named.names {
        out.push_str(&format!("n {name}\n"));
    }
    for edge in g.edges() {
        out.push_str(&format!(
            "e {} {} {}\n",
            named.names[edge.from],
            named.names[edge.to],
            render_cost(&edge.cost)
        ));
    }
    out
}

fn render_cost(f: &TravelTimeFunction) -> String {
    match f {
        TravelTimeFunction::Constant(v) => format!("const {v}"),
        TravelTimeFunction::PiecewiseConstant(points) => format!("pwc {}", render_points(points)),
        TravelTimeFunction::PiecewiseLinear(points) => format!("pwl {}", render_points(points)),
    }
}

fn render_points(points: &[(TimePoint, DurationTicks)]) -> String {
    points
        .iter()
        .map(|(t, v)| format!("{t}:{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Serialize a corpus instance.
pub fn serialize_instance(inst: &tdroute_core::corpus::CorpusInstance) -> String {
    let named = NamedGraph::new(inst.graph.clone(), inst.node_names.clone());
    serialize(&named)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = "\
# counterexample
td 4 4 tick 1
n s
n u
n v
n f
e s u const 1
e s v const 1
e u v const 1
e v f pwc 0:10,2:1
";

    #[test]
    fn parses_the_counterexample_file() {
        let named = parse_graph(FIG1).unwrap();
        assert_eq!(named.graph.node_count(), 4);
        assert_eq!(named.node_id("v"), Some(2));
        let vf = &named.graph.edge(3).cost;
        assert_eq!(vf.evaluate(TimePoint::new(1)), DurationTicks::new(10));
    }

    #[test]
    fn single_node_no_edges() {
        let named = parse_graph("td 1 0 tick 1\nn only\n").unwrap();
        assert_eq!(named.graph.node_count(), 1);
        assert_eq!(named.graph.edge_count(), 0);
    }

    #[test]
    fn unknown_endpoint_is_a_parse_error() {
        let text = "td 2 1 tick 1\nn a\nn b\ne a z const 1\n";
        let e = parse_graph(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("unknown node"));
    }

    #[test]
    fn count_mismatch_is_reported() {
        let e = parse_graph("td 3 0 tick 1\nn a\nn b\n").unwrap_err();
        assert!(e.message.contains("declares 3 nodes"));
    }

    #[test]
    fn invalid_profile_is_reported_with_the_edge_line() {
        let text = "td 2 1 tick 1\nn a\nn b\ne a b pwc 0:1,5:2,3:4\n";
        let e = parse_graph(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("does not increase"));
    }

    #[test]
    fn pwc_must_start_at_zero() {
        let text = "td 2 1 tick 1\nn a\nn b\ne a b pwc 1:1,3:2\n";
        let e = parse_graph(text).unwrap_err();
        assert!(e.message.contains("start at tick 0"));
    }

    #[test]
    fn round_trips_canonically() {
        let named = parse_graph(FIG1).unwrap();
        let rendered = serialize(&named);
        let reparsed = parse_graph(&rendered).unwrap();
        assert_eq!(serialize(&reparsed), rendered);
        assert_eq!(reparsed.graph.edges(), named.graph.edges());
        assert_eq!(reparsed.names, named.names);
    }
}
