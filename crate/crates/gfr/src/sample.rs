//! Seeded random graph streams for the property sweeps. Sample `i` of a
//! stream with seed `s` is drawn from ChaCha8 seeded with `s` on stream `i`,
//! so every sample is reproducible on its own and independent of how the
//! sweep is scheduled.

use gfr_core::families::random_tree;
use gfr_core::internal::{internal_sets_fast, is_h_rigid};
use gfr_core::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `G(n, p)` on labels `1..=n`.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i as i64 + 1, j as i64 + 1));
            }
        }
    }
    Graph::from_edge_list(1..=n as i64, edges).expect("labels are declared")
}

/// Connected graph on `3..=max_n` vertices whose internal sets are all
/// single vertices, by rejection from sparse `G(n, p)`.
pub fn connected_singleton_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let max_n = max_n.max(3);
    loop {
        let n = rng.gen_range(3..=max_n);
        let p = (rng.gen_range(1.1..3.0) / n as f64).min(1.0);
        let g = gnp(n, p, rng);
        if g.is_connected() && internal_sets_fast(&g).all_singletons {
            return g;
        }
    }
}

/// Base graph whose every vertex will be internal after decoration: a
/// random tree on `2..=max_base` vertices, or a cycle on `5..=9`.
fn base(rng: &mut impl Rng, max_base: usize) -> Graph {
    if rng.gen_bool(0.25) {
        let n = rng.gen_range(5..=9);
        gfr_core::families::cycle(n).expect("n >= 5")
    } else {
        let n = rng.gen_range(2..=max_base.max(2));
        random_tree(n, rng.gen()).expect("n >= 2")
    }
}

/// Hangs cliques off base vertices. Each clique `K_m` (`m` in `1..=3`) is
/// joined to one base vertex only; vertices of base degree at most one get
/// at least one clique so they become internal. The clique vertices are
/// never internal, so the internal graph is the base.
fn decorate(g: &Graph, rng: &mut impl Rng) -> Graph {
    let n = g.order();
    let mut edges: Vec<(usize, usize)> = g.edges();
    let mut next = n;
    for v in 0..n {
        let needed = usize::from(g.degree(v) <= 1);
        let count = needed + rng.gen_range(0..=1usize) * rng.gen_range(0..=2usize);
        for _ in 0..count {
            let m = rng.gen_range(1..=3);
            let members: Vec<usize> = (next..next + m).collect();
            next += m;
            for (i, &a) in members.iter().enumerate() {
                edges.push((v, a));
                for &b in &members[i + 1..] {
                    edges.push((a, b));
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..next).collect();
    perm.shuffle(rng);
    Graph::from_edge_list(
        1..=next as i64,
        edges.into_iter().map(|(a, b)| (perm[a] as i64 + 1, perm[b] as i64 + 1)),
    )
    .expect("labels are declared")
}

/// Two connected H-rigid graphs with isomorphic internal graphs: the same
/// base with independent decorations.
pub fn rigid_pair_with_common_internal_graph(rng: &mut impl Rng, max_base: usize) -> (Graph, Graph) {
    let b = base(rng, max_base);
    let pair = (decorate(&b, rng), decorate(&b, rng));
    debug_assert!(is_h_rigid(&pair.0).h_rigid && is_h_rigid(&pair.1).h_rigid);
    pair
}
