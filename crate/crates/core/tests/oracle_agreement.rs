//! Fast paths against the subset-enumeration oracles.

mod common;

use gfr_core::catalog;
use gfr_core::internal::*;
use gfr_core::{Graph, VertexSet};

fn check(g: &Graph) {
    let fast = internal_sets_fast(g);
    let brute = internal_sets_bruteforce(g, None, false).unwrap();
    let el = g.to_edge_list("; ");
    assert_eq!(fast.all_singletons, brute.all_singletons, "condition 2 on {el}");
    assert_eq!(fast.witness, brute.witness, "condition 2 witness on {el}");
    if let Some(w) = &fast.witness {
        let link = g.link_of(w).unwrap();
        assert!(w.len() >= 2 && !g.is_complete_set(&link).unwrap(), "witness not internal on {el}");
    }

    let lc = link_condition(g);
    let oracle = link_condition_bruteforce(g, false).unwrap();
    assert_eq!(lc.holds, oracle.is_none(), "condition 3 on {el}");
    if let Some(w) = &lc.witness {
        let hub = g.index_of(&w.hub).unwrap();
        let nb = g.neighbors(hub);
        let idx = g.indices(&w.set).unwrap();
        assert!(idx.is_subset(nb) && idx.len() == 3 && !g.is_complete(&idx));
        assert_eq!(g.induced(&idx).size(), 2, "witness is not an induced path on {el}");
    }

    // internal vertices are the singleton internal sets
    if brute.total <= MAX_LISTED_SETS {
        let singles: VertexSet = brute
            .sets
            .iter()
            .filter(|s| s.len() == 1)
            .flat_map(|s| s.iter().cloned())
            .collect();
        assert_eq!(internal_vertices(g), singles, "internal vertices on {el}");
    }

    let a = is_h_rigid(g);
    let b = is_h_rigid_bruteforce(g, false).unwrap();
    assert_eq!(
        (a.h_rigid, a.internal_sets_are_vertices, a.link_condition, &a.internal_set_witness),
        (b.h_rigid, b.internal_sets_are_vertices, b.link_condition, &b.internal_set_witness),
        "report on {el}"
    );
}

#[test]
fn exhaustive_catalog_up_to_seven() {
    let graphs = catalog::graphs_up_to(7);
    assert_eq!(graphs.len(), 1 + 1 + 2 + 4 + 11 + 34 + 156 + 1044);
    for g in &graphs {
        check(g);
    }
}

#[test]
fn random_graphs_eight_to_fourteen() {
    let mut rng = common::rng(0x0a11);
    for k in 0..200 {
        let n = 8 + k % 7;
        let p = [0.15, 0.25, 0.35, 0.5, 0.7][k % 5];
        check(&common::gnp(n, p, &mut rng));
    }
}

#[test]
fn sparse_connected_trees_agree() {
    for seed in 0..40 {
        let g = gfr_core::families::random_tree(12, seed).unwrap();
        check(&g);
        assert!(is_h_rigid(&g).h_rigid);
    }
}

#[test]
fn guard_and_force() {
    let g = gfr_core::families::line(21).unwrap();
    assert!(matches!(
        internal_sets_bruteforce(&g, None, false),
        Err(AnalysisError::TooLarge { vertices: 21, .. })
    ));
    let forced = internal_sets_bruteforce(&g, Some(2), true).unwrap();
    assert!(forced.all_singletons);
}
