#![allow(dead_code)]

use gfr_core::Graph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) on labels `1..=n`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=n as i64 {
        for j in i + 1..=n as i64 {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edge_list(1..=n as i64, edges).unwrap()
}

/// Graphs on up to `max_n` vertices, each pair an edge independently.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 1..=n as i64 {
                for j in i + 1..=n as i64 {
                    if bits[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(1..=n as i64, edges).unwrap()
        })
    })
}

/// Relabels vertex `i` (by position) as `perm[i] + 1`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(i64, i64)> = g
        .edges()
        .into_iter()
        .map(|(a, b)| (perm[a] as i64 + 1, perm[b] as i64 + 1))
        .collect();
    Graph::from_edge_list(1..=g.order() as i64, edges).unwrap()
}
