//! Built-in instance corpus: the counterexample graphs plus seeded random
//! generators for FIFO and non-FIFO stress suites.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::func::TravelTimeFunction;
use crate::graph::{Edge, Graph};
use crate::state_graph::pseudo_poly_family;
use crate::time::{DurationTicks, TimePoint};

/// A named graph with symbolic node names and a provenance note.
#[derive(Clone, Debug)]
pub struct CorpusInstance {
    pub name: String,
    pub graph: Graph,
    pub node_names: Vec<String>,
    pub notes: String,
}

impl CorpusInstance {
    fn new(name: &str, graph: Graph, node_names: &[&str], notes: &str) -> Self {
        CorpusInstance {
            name: name.to_string(),
            graph,
            node_names: node_names.iter().map(|s| s.to_string()).collect(),
            notes: notes.to_string(),
        }
    }
}

/// The four-node counterexample on which the naive time-dependent
/// relaxation fails: `s -> u`, `s -> v`, `u -> v` all cost 1, and `v -> f`
/// costs 10 before time 2 and 1 from then on. Starting at `(s, 0)` the true
/// optimum is `(s, u, v, f)` arriving at 3, while the naive method reports
/// 11. Nodes: s=0, u=1, v=2, f=3.
pub fn fig1() -> CorpusInstance {
    let one = TravelTimeFunction::Constant(DurationTicks::new(1));
    let graph = Graph::new(
        4,
        vec![
            Edge {
                from: 0,
                to: 1,
                cost: one.clone(),
            },
            Edge {
                from: 0,
                to: 2,
                cost: one.clone(),
            },
            Edge {
                from: 1,
                to: 2,
                cost: one,
            },
            Edge {
                from: 2,
                to: 3,
                cost: TravelTimeFunction::PiecewiseConstant(vec![
                    (TimePoint::ZERO, DurationTicks::new(10)),
                    (TimePoint::new(2), DurationTicks::new(1)),
                ]),
            },
        ],
    );
    CorpusInstance::new(
        "fig1",
        graph,
        &["s", "u", "v", "f"],
        "non-FIFO counterexample: naive relaxation reports 11, optimum is 3",
    )
}

/// `fig1` with the drop removed: `v -> f` is a constant 10, making the
/// whole graph FIFO.
pub fn fig1_fifo() -> CorpusInstance {
    let one = TravelTimeFunction::Constant(DurationTicks::new(1));
    let graph = Graph::new(
        4,
        vec![
            Edge {
                from: 0,
                to: 1,
                cost: one.clone(),
            },
            Edge {
                from: 0,
                to: 2,
                cost: one.clone(),
            },
            Edge {
                from: 1,
                to: 2,
                cost: one,
            },
            Edge {
                from: 2,
                to: 3,
                cost: TravelTimeFunction::Constant(DurationTicks::new(10)),
            },
        ],
    );
    CorpusInstance::new(
        "fig1-fifo",
        graph,
        &["s", "u", "v", "f"],
        "fig1 with vf made Constant(10); all-constant costs, FIFO",
    )
}

/// The pseudo-polynomial family member for a given `k`. Nodes: s=0, u=1,
/// f=2.
pub fn fig3(k: u64) -> CorpusInstance {
    let graph = pseudo_poly_family(k).expect("k >= 1");
    CorpusInstance::new(
        &format!("fig3-k{k}"),
        graph,
        &["s", "u", "f"],
        "pseudo-polynomial family: expansion size grows with k, not with the graph",
    )
}

/// The built-in instances: `fig1`, `fig1-fifo`, `fig3-k4`.
pub fn builtin_corpus() -> Vec<CorpusInstance> {
    vec![fig1(), fig1_fifo(), fig3(4)]
}

/// Parameters for the seeded random instance generator.
#[derive(Clone, Copy, Debug)]
pub struct RandomGraphSpec {
    pub nodes: usize,
    pub edge_prob: f64,
    /// `true`: every edge function passes the FIFO check (rejection-sampled
    /// per edge). `false`: at least one edge is a verified FIFO violator.
    pub fifo: bool,
    /// Largest duration value drawn.
    pub max_value: u64,
    /// Largest number of breakpoints/samples per profile.
    pub max_breakpoints: usize,
    /// Optional hard cap on the edge count.
    pub max_edges: Option<usize>,
    pub seed: u64,
}

impl RandomGraphSpec {
    pub fn fifo(nodes: usize, seed: u64) -> Self {
        RandomGraphSpec {
            nodes,
            edge_prob: 0.35,
            fifo: true,
            max_value: 30,
            max_breakpoints: 4,
            max_edges: Some(20),
            seed,
        }
    }

    pub fn non_fifo(nodes: usize, seed: u64) -> Self {
        RandomGraphSpec {
            fifo: false,
            ..Self::fifo(nodes, seed)
        }
    }
}

/// Deterministic random instance: the same spec always yields the same
/// graph, bit for bit.
pub fn gen_random(spec: &RandomGraphSpec) -> CorpusInstance {
    assert!(spec.nodes >= 2, "generator needs at least two nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let p = spec.edge_prob.clamp(0.0, 1.0);

    let mut pairs = Vec::new();
    for from in 0..spec.nodes {
        for to in 0..spec.nodes {
            if from != to && rng.gen_bool(p) {
                pairs.push((from, to));
            }
        }
    }
    if let Some(cap) = spec.max_edges {
        pairs.truncate(cap);
    }
    // Keep generated instances connected enough to be interesting.
    if pairs.is_empty() {
        pairs.push((0, 1));
    }

    let mut edges: Vec<Edge> = pairs
        .iter()
        .map(|&(from, to)| Edge {
            from,
            to,
            cost: gen_function(&mut rng, spec),
        })
        .collect();

    if !spec.fifo {
        let victim = rng.gen_range(0..edges.len());
        edges[victim].cost = violating_function(&mut rng, spec);
        debug_assert!(!edges[victim].cost.check_fifo().is_fifo());
    }

    let graph = Graph::new(spec.nodes, edges);
    debug_assert!(graph.validate().is_valid());
    let node_names = (0..spec.nodes).map(|i| format!("v{i}")).collect();
    CorpusInstance {
        name: format!(
            "rand-{}-n{}-{}",
            if spec.fifo { "fifo" } else { "nonfifo" },
            spec.nodes,
            spec.seed
        ),
        graph,
        node_names,
        notes: format!("generator: {spec:?}"),
    }
}

fn gen_function(rng: &mut ChaCha8Rng, spec: &RandomGraphSpec) -> TravelTimeFunction {
    // Rejection-sample until the function passes the FIFO check when the
    // spec demands it; constants always do, so this terminates.
    for _ in 0..200 {
        let f = draw_function(rng, spec);
        if !spec.fifo || f.check_fifo().is_fifo() {
            return f;
        }
    }
    TravelTimeFunction::Constant(DurationTicks::new(rng.gen_range(1..=spec.max_value)))
}

fn draw_function(rng: &mut ChaCha8Rng, spec: &RandomGraphSpec) -> TravelTimeFunction {
    let value = |rng: &mut ChaCha8Rng| DurationTicks::new(rng.gen_range(1..=spec.max_value));
    match rng.gen_range(0..3) {
        0 => TravelTimeFunction::Constant(value(rng)),
        1 => {
            let points = profile_times(rng, spec, true)
                .into_iter()
                .map(|t| (t, value(rng)))
                .collect();
            TravelTimeFunction::PiecewiseConstant(points)
        }
        _ => {
            let points = profile_times(rng, spec, false)
                .into_iter()
                .map(|t| (t, value(rng)))
                .collect();
            TravelTimeFunction::PiecewiseLinear(points)
        }
    }
}

fn profile_times(
    rng: &mut ChaCha8Rng,
    spec: &RandomGraphSpec,
    start_at_zero: bool,
) -> Vec<TimePoint> {
    let count = rng.gen_range(2..=spec.max_breakpoints.max(2));
    let mut ticks: Vec<u64> = Vec::with_capacity(count);
    let mut t = if start_at_zero {
        0
    } else {
        rng.gen_range(0..4)
    };
    for _ in 0..count {
        ticks.push(t);
        t += rng.gen_range(1..=8);
    }
    ticks.into_iter().map(TimePoint::new).collect()
}

/// A piecewise-constant drop of more than one tick per tick: always a FIFO
/// violation.
fn violating_function(rng: &mut ChaCha8Rng, spec: &RandomGraphSpec) -> TravelTimeFunction {
    let hi = spec.max_value.max(3);
    let switch = rng.gen_range(1..=5);
    TravelTimeFunction::PiecewiseConstant(vec![
        (TimePoint::ZERO, DurationTicks::new(hi)),
        (TimePoint::new(switch), DurationTicks::new(1)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state_graph::{expand, ExpandOptions};

    #[test]
    fn corpus_shapes_match_the_figures() {
        let corpus = builtin_corpus();
        let by_name = |n: &str| corpus.iter().find(|c| c.name == n).unwrap();

        let fig1 = by_name("fig1");
        assert_eq!(fig1.graph.node_count(), 4);
        assert_eq!(fig1.graph.edge_count(), 4);

        let k4 = by_name("fig3-k4");
        let sg = expand(&k4.graph, 0, TimePoint::ZERO, &ExpandOptions::default());
        assert_eq!(sg.stats.state_count, 8);

        assert!(by_name("fig1-fifo").graph.is_fifo());
        assert!(!fig1.graph.is_fifo());
    }

    #[test]
    fn corpus_names_are_unique() {
        let corpus = builtin_corpus();
        let mut names: Vec<&str> = corpus.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), corpus.len());
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = RandomGraphSpec::fifo(6, 42);
        let a = gen_random(&spec);
        let b = gen_random(&spec);
        assert_eq!(a.graph.edges(), b.graph.edges());
        assert_eq!(a.graph.node_count(), b.graph.node_count());
    }

    #[test]
    fn fifo_instances_pass_the_whole_graph_check() {
        for seed in 0..25 {
            let inst = gen_random(&RandomGraphSpec::fifo(7, seed));
            assert!(
                inst.graph.is_fifo(),
                "seed {seed} produced a non-FIFO edge in a FIFO instance"
            );
        }
    }

    #[test]
    fn non_fifo_instances_carry_a_verified_violator() {
        for seed in 0..25 {
            let inst = gen_random(&RandomGraphSpec::non_fifo(7, seed));
            assert!(
                inst.graph.fifo_violation().is_some(),
                "seed {seed} produced no violator in a non-FIFO instance"
            );
        }
    }
}
