//! Equivalence and structural properties of the state-transition expansion.

use tdroute_core::corpus::{builtin_corpus, gen_random, CorpusInstance, RandomGraphSpec};
use tdroute_core::oracle::{fastest_arrival, OracleOptions};
use tdroute_core::state_graph::{expand, pseudo_poly_family, solve_via_state_graph, ExpandOptions};
use tdroute_core::td::{td_dijkstra_fifo, TdQuery};
use tdroute_core::{EngineError, Graph, TimePoint};

const HORIZON: TimePoint = TimePoint::new(200);

fn opts_with_horizon() -> ExpandOptions {
    ExpandOptions {
        horizon: Some(HORIZON),
        ..ExpandOptions::default()
    }
}

fn mixed_instance(seed: u64) -> CorpusInstance {
    let nodes = 2 + (seed as usize % 6); // <= 7 nodes
    let spec = if seed.is_multiple_of(2) {
        RandomGraphSpec::fifo(nodes, seed)
    } else {
        RandomGraphSpec::non_fifo(nodes, seed)
    };
    gen_random(&RandomGraphSpec {
        max_value: 20,
        ..spec
    })
}

fn queries(g: &Graph, seed: u64) -> Vec<TdQuery> {
    let n = g.node_count();
    (0..3)
        .map(|i| {
            TdQuery::new(
                (seed as usize + i) % n,
                Some((seed as usize + 3 * i + 1) % n),
                TimePoint::new((seed * 5 + i as u64 * 11) % 30),
            )
        })
        .collect()
}

#[test]
fn untruncated_expansions_match_the_walk_oracle() {
    // On every instance, FIFO or not, whose expansion completed without any
    // cut, the state-graph solver and the brute-force oracle must agree.
    let mut compared = 0u32;
    let mut graphs: Vec<Graph> = builtin_corpus().into_iter().map(|c| c.graph).collect();
    graphs.extend((0..200u64).map(|seed| mixed_instance(seed).graph));

    for (i, g) in graphs.iter().enumerate() {
        for q in queries(g, i as u64) {
            let sg = expand(g, q.source, q.t0, &opts_with_horizon());
            if sg.stats.truncated {
                continue;
            }
            compared += 1;
            let want = fastest_arrival(
                g,
                q.source,
                q.target.unwrap(),
                q.t0,
                &OracleOptions::new(HORIZON),
            )
            .unwrap()
            .arrival;
            match solve_via_state_graph(g, &q, &opts_with_horizon()) {
                Ok(route) => assert_eq!(Some(route.arrival), want, "graph {i} {q:?}"),
                Err(EngineError::Unreachable) => assert_eq!(want, None, "graph {i} {q:?}"),
                Err(e) => panic!("graph {i}: {e}"),
            }
        }
    }
    assert!(compared >= 300, "only {compared} untruncated comparisons");
}

#[test]
fn fifo_expansions_are_never_marked_truncated_by_the_cutoff() {
    // The revisit cutoff is provably exact under FIFO, so FIFO instances
    // within the horizon must come out untruncated and equal to td-fifo.
    for seed in 0..80u64 {
        let inst = gen_random(&RandomGraphSpec::fifo(2 + (seed as usize % 6), seed));
        for q in queries(&inst.graph, seed) {
            let sg = expand(&inst.graph, q.source, q.t0, &opts_with_horizon());
            assert!(!sg.stats.truncated, "seed {seed}: FIFO expansion truncated");
            let labels = td_dijkstra_fifo(&inst.graph, &q).unwrap();
            match solve_via_state_graph(&inst.graph, &q, &opts_with_horizon()) {
                Ok(route) => {
                    assert_eq!(Some(route.arrival), labels.arrival[q.target.unwrap()])
                }
                Err(EngineError::Unreachable) => {
                    assert_eq!(labels.arrival[q.target.unwrap()], None)
                }
                Err(e) => panic!("seed {seed}: {e}"),
            }
        }
    }
}

#[test]
fn disabling_the_cutoff_does_not_change_fifo_answers() {
    // Raw horizon-bounded closure vs the cutoff expansion: same optimum.
    let raw = ExpandOptions {
        revisit_cutoff: false,
        ..opts_with_horizon()
    };
    for seed in 0..30u64 {
        let inst = gen_random(&RandomGraphSpec::fifo(2 + (seed as usize % 5), seed));
        for q in queries(&inst.graph, seed) {
            let a = solve_via_state_graph(&inst.graph, &q, &opts_with_horizon());
            let b = solve_via_state_graph(&inst.graph, &q, &raw);
            match (a, b) {
                (Ok(x), Ok(y)) => assert_eq!(x.arrival, y.arrival, "seed {seed}"),
                (Err(EngineError::Unreachable), Err(EngineError::Unreachable)) => {}
                // The raw closure may hit the horizon on cyclic graphs and
                // come back Truncated (answer unknown) where the cutoff
                // expansion completed with a definite verdict.
                (Ok(_), Err(EngineError::Truncated)) => {}
                (Err(EngineError::Unreachable), Err(EngineError::Truncated)) => {}
                (x, y) => panic!("seed {seed}: {x:?} vs {y:?}"),
            }
        }
    }
}

#[test]
fn every_transition_audits_against_direct_evaluation() {
    for seed in 0..60u64 {
        let inst = mixed_instance(seed);
        let opts = ExpandOptions {
            allow_wait: seed % 3 == 0,
            ..opts_with_horizon()
        };
        let sg = expand(
            &inst.graph,
            seed as usize % inst.graph.node_count(),
            TimePoint::ZERO,
            &opts,
        );
        for t in &sg.transitions {
            let from = sg.states[t.from];
            let to = sg.states[t.to];
            assert_eq!(from.time.checked_add(t.cost), Some(to.time), "seed {seed}");
            match t.via {
                Some(e) => {
                    let edge = inst.graph.edge(e);
                    assert_eq!(edge.from, from.node, "seed {seed}");
                    assert_eq!(edge.to, to.node, "seed {seed}");
                    assert_eq!(edge.cost.evaluate(from.time), t.cost, "seed {seed}");
                }
                None => {
                    assert_eq!(from.node, to.node, "waiting stays in place");
                    assert_eq!(t.cost.ticks(), 1, "waiting advances one tick");
                }
            }
        }
        // Deterministic: a second expansion is identical.
        let again = expand(
            &inst.graph,
            seed as usize % inst.graph.node_count(),
            TimePoint::ZERO,
            &opts,
        );
        assert_eq!(sg, again);
    }
}

#[test]
fn family_state_counts_grow_affinely_per_parity() {
    // Even k: 3k/2 + 2 states; odd k: 3(k+1)/2. Strictly increasing in k.
    let mut last = 0usize;
    for k in 2..=50u64 {
        let g = pseudo_poly_family(k).unwrap();
        let sg = expand(&g, 0, TimePoint::ZERO, &ExpandOptions::default());
        let count = sg.stats.state_count;
        let expected = if k % 2 == 0 {
            (3 * k / 2 + 2) as usize
        } else {
            (3 * (k + 1) / 2) as usize
        };
        assert_eq!(count, expected, "k = {k}");
        assert!(
            count > last,
            "state count must strictly increase at k = {k}"
        );
        last = count;
    }
}

#[test]
fn family_solution_matches_the_oracle_for_even_k() {
    // Optimum for even k: ping-pong until t = k, then take the cheap edge.
    for k in [2u64, 4, 6, 10, 20] {
        let g = pseudo_poly_family(k).unwrap();
        let q = TdQuery::new(0, Some(2), TimePoint::ZERO);
        let route = solve_via_state_graph(&g, &q, &ExpandOptions::default()).unwrap();
        let want = fastest_arrival(
            &g,
            0,
            2,
            TimePoint::ZERO,
            &OracleOptions::new(TimePoint::new(6 * k + 20)),
        )
        .unwrap()
        .arrival;
        assert_eq!(Some(route.arrival), want, "k = {k}");
        assert_eq!(route.arrival, TimePoint::new(k + 1), "k = {k}");
    }
}
