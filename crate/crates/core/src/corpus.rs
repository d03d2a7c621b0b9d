//! Ready-made hypergraphs: the two worked examples used throughout the
//! documentation, small standard shapes, and seeded random generators.
//!
//! This is plumbing for tests, benchmarks, and demos. The random
//! generators always produce connected hypergraphs with no isolated
//! vertices, so every output is valid input for the walk and signed
//! factorizations. They panic on parameter combinations that cannot
//! possibly connect the vertex set (too few edges for the cardinality
//! cap) — callers pick sane budgets.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypergraph::{Hypergraph, OrientedHypergraph};

/// The running four-vertex example: edges `{v1, v2, v4}`, `{v1, v2}`,
/// `{v1, v3}`.
pub fn running_example() -> Hypergraph {
    Hypergraph::new(
        vertex_names(4),
        vec![
            ("e1".into(), vec!["v1", "v2", "v4"]),
            ("e2".into(), vec!["v1", "v2"]),
            ("e3".into(), vec!["v1", "v3"]),
        ],
    )
    .expect("running example is valid")
}

/// The reaction-network example: `v1 + v4 -> v2`, `v2 -> v1`, `v1 -> v3`.
pub fn reaction_example() -> OrientedHypergraph {
    OrientedHypergraph::new(
        vertex_names(4),
        vec![
            ("e1".into(), vec!["v1", "v4"], vec!["v2"]),
            ("e2".into(), vec!["v2"], vec!["v1"]),
            ("e3".into(), vec!["v1"], vec!["v3"]),
        ],
    )
    .expect("reaction example is valid")
}

/// A single edge on two vertices.
pub fn pair() -> Hypergraph {
    Hypergraph::new(vec![], vec![("e".into(), vec!["a", "b"])]).expect("pair is valid")
}

/// A path on `n >= 2` vertices (`n - 1` two-vertex edges).
pub fn path(n: usize) -> Hypergraph {
    assert!(n >= 2, "a path needs at least two vertices");
    let edges = (0..n - 1)
        .map(|i| {
            (
                format!("p{}", i + 1),
                vec![format!("v{}", i + 1), format!("v{}", i + 2)],
            )
        })
        .collect();
    Hypergraph::new(vec![], edges).expect("path is valid")
}

/// A cycle on `n >= 3` vertices (`n` two-vertex edges).
pub fn cycle(n: usize) -> Hypergraph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let edges = (0..n)
        .map(|i| {
            (
                format!("c{}", i + 1),
                vec![format!("v{}", i + 1), format!("v{}", (i + 1) % n + 1)],
            )
        })
        .collect();
    Hypergraph::new(vec![], edges).expect("cycle is valid")
}

/// Membership lists for a connected random hypergraph: `edges` member
/// sets over vertex indices `0..vertices`, each of size `2..=max_card`.
///
/// Early edges grow a connected cover — each takes one already-covered
/// vertex plus fresh ones — and the remaining budget is filled with
/// uniform random edges, so connectivity holds by construction.
fn random_members(
    vertices: usize,
    edges: usize,
    max_card: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<usize>> {
    assert!(vertices >= 2, "need at least two vertices");
    assert!(edges >= 1, "need at least one edge");
    assert!(
        (2..=vertices).contains(&max_card),
        "cardinality cap must lie in [2, vertices]"
    );

    let mut covered: Vec<usize> = Vec::new();
    let mut uncovered: Vec<usize> = (0..vertices).collect();
    let mut member_sets: Vec<Vec<usize>> = Vec::with_capacity(edges);

    while !uncovered.is_empty() {
        assert!(
            member_sets.len() < edges,
            "edge budget too small to connect {vertices} vertices \
             at cardinality cap {max_card}"
        );
        let mut members = Vec::new();
        if !covered.is_empty() {
            members.push(covered[rng.random_range(0..covered.len())]);
        }
        let fresh = (max_card - members.len()).min(uncovered.len());
        for idx in sample(rng, uncovered.len(), fresh).into_iter() {
            members.push(uncovered[idx]);
        }
        members.sort_unstable();
        for &v in &members {
            if let Some(pos) = uncovered.iter().position(|&u| u == v) {
                uncovered.swap_remove(pos);
                covered.push(v);
            }
        }
        member_sets.push(members);
    }

    while member_sets.len() < edges {
        let k = rng.random_range(2..=max_card);
        let mut members: Vec<usize> = sample(rng, vertices, k).into_iter().collect();
        members.sort_unstable();
        member_sets.push(members);
    }

    member_sets
}

fn vertex_names(vertices: usize) -> Vec<String> {
    (1..=vertices).map(|i| format!("v{i}")).collect()
}

/// A seeded random connected hypergraph on `vertices` vertices with
/// exactly `edges` edges of cardinality `2..=max_card`.
pub fn random_hypergraph(vertices: usize, edges: usize, max_card: usize, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = vertex_names(vertices);
    let edge_list = random_members(vertices, edges, max_card, &mut rng)
        .into_iter()
        .enumerate()
        .map(|(i, members)| {
            (
                format!("e{}", i + 1),
                members.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
            )
        })
        .collect();
    Hypergraph::new(names, edge_list).expect("generator output is valid")
}

/// A seeded random connected oriented hypergraph. Every edge has at
/// least one input and one output, so all oriented constructions accept
/// the result.
pub fn random_oriented(
    vertices: usize,
    edges: usize,
    max_card: usize,
    seed: u64,
) -> OrientedHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = vertex_names(vertices);
    let edge_list = random_members(vertices, edges, max_card, &mut rng)
        .into_iter()
        .enumerate()
        .map(|(i, mut members)| {
            // split into a non-empty input side and non-empty output side
            for j in (1..members.len()).rev() {
                members.swap(j, rng.random_range(0..=j));
            }
            let cut = rng.random_range(1..members.len());
            let (ins, outs) = members.split_at(cut);
            (
                format!("e{}", i + 1),
                ins.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
                outs.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
            )
        })
        .collect();
    OrientedHypergraph::new(names, edge_list).expect("generator output is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::AnyHypergraph;
    use crate::walk::{factorize, WalkVariant};

    #[test]
    fn named_examples_have_the_documented_shape() {
        let run = running_example();
        assert_eq!(run.vertex_names(), ["v1", "v2", "v3", "v4"]);
        let t: Vec<_> = (0..4).map(|v| run.degree_t(v)).collect();
        assert_eq!(t, [3, 2, 1, 1]);
        assert!(run.is_connected());

        let reaction = reaction_example();
        assert_eq!(reaction.vertex_names(), ["v1", "v2", "v3", "v4"]);
        assert_eq!(reaction.edges().len(), 3);
        assert!(reaction.is_connected());

        let k2 = pair();
        assert_eq!(k2.vertex_names(), ["a", "b"]);
        assert_eq!(k2.edges().len(), 1);
    }

    #[test]
    fn paths_and_cycles_have_the_right_counts() {
        let p = path(4);
        assert_eq!(p.vertex_names().len(), 4);
        assert_eq!(p.edges().len(), 3);
        assert!(p.is_connected());
        assert_eq!(p.max_cardinality(), (2, true));

        let c = cycle(5);
        assert_eq!(c.vertex_names().len(), 5);
        assert_eq!(c.edges().len(), 5);
        assert!(c.is_connected());
        assert_eq!(c.max_cardinality(), (2, true));
    }

    #[test]
    fn random_hypergraphs_are_connected_and_deterministic() {
        for seed in 0..20 {
            let h = random_hypergraph(12, 8, 4, seed);
            assert_eq!(h.vertex_names().len(), 12);
            assert_eq!(h.edges().len(), 8);
            assert!(h.is_connected(), "seed {seed} disconnected");
            for e in h.edges() {
                assert!((2..=4).contains(&e.cardinality()));
            }
        }
        assert_eq!(
            random_hypergraph(12, 8, 4, 7).to_text(),
            random_hypergraph(12, 8, 4, 7).to_text(),
        );
    }

    #[test]
    fn random_oriented_edges_have_both_sides() {
        for seed in 0..20 {
            let h = random_oriented(10, 7, 4, seed);
            assert!(h.is_connected(), "seed {seed} disconnected");
            for e in h.edges() {
                assert!(!e.inputs.is_empty() && !e.outputs.is_empty());
            }
            // every member has anti-oriented partners, so this accepts
            factorize(&AnyHypergraph::Oriented(h), WalkVariant::OrientedWalk).unwrap();
        }
    }

    #[test]
    #[should_panic(expected = "edge budget too small")]
    fn impossible_budgets_panic() {
        random_hypergraph(10, 1, 3, 0);
    }
}
