mod common;

use gfr_core::distinguish::{classify_catalog, distinguish, Basis, VerdictKind};
use gfr_core::families::*;
use gfr_core::internal::*;
use gfr_core::{ExtNat, Graph, VertexSet};
use proptest::prelude::*;
use rand::Rng;

fn hand_line(n: i64) -> Graph {
    Graph::from_edge_list(1..=n, (1..n).map(|i| (i, i + 1))).unwrap()
}

#[test]
fn families_match_hand_built() {
    for n in 2..=8 {
        assert_eq!(line(n).unwrap(), hand_line(n as i64));
    }
    for n in 3..=8i64 {
        let mut edges: Vec<(i64, i64)> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        assert_eq!(cycle(n as usize).unwrap(), Graph::from_edge_list(1..=n, edges).unwrap());
    }
}

#[test]
fn rigidity_battery() {
    for n in 2..=10 {
        assert!(is_h_rigid(&line(n).unwrap()).h_rigid, "line {n}");
    }
    for n in [3, 5, 6, 7, 8, 9, 10] {
        let r = is_h_rigid(&cycle(n).unwrap());
        assert!(r.h_rigid && r.notes.is_empty(), "cycle {n}");
    }
    let z4 = is_h_rigid(&cycle(4).unwrap());
    assert!(!z4.h_rigid);
    assert_eq!(z4.internal_set_witness, Some([2i64, 4].into_iter().collect()));
    assert_eq!(z4.notes, vec![CYCLE4_NOTE.to_string()]);
    for seed in 0..500u64 {
        let n = 1 + (seed % 14) as usize;
        let t = random_tree(n, seed).unwrap();
        assert_eq!(t.size(), n - 1);
        assert!(n == 1 || t.is_connected());
        assert!(is_h_rigid(&t).h_rigid, "tree {n} seed {seed}");
    }
    for d in 2..=4 {
        for depth in 1..=4 {
            assert!(is_h_rigid(&truncated_regular_tree(d, depth).unwrap()).h_rigid);
        }
    }
    let l3 = line(3).unwrap();
    assert!(gfr_core::iso::are_isomorphic(&truncated_regular_tree(3, 1).unwrap(), &l3).isomorphic);
}

#[test]
fn complete_graphs_rigid_with_empty_internal_graph() {
    for n in 1..=8 {
        let k = complete(n).unwrap();
        assert!(is_h_rigid(&k).h_rigid);
        assert!(internal_graph(&k).is_empty());
    }
}

#[test]
fn internal_graph_examples() {
    let set = |xs: &[i64]| xs.iter().copied().collect::<VertexSet>();
    assert_eq!(internal_vertices(&line(5).unwrap()), set(&[2, 3, 4]));
    assert_eq!(internal_vertices(&cycle(5).unwrap()), set(&[1, 2, 3, 4, 5]));
    assert_eq!(internal_graph(&line(5).unwrap()).edge_labels().len(), 2);
    assert!(internal_graph(&line(2).unwrap()).is_empty());
    assert_eq!(internal_graph(&cycle(6).unwrap()), cycle(6).unwrap());
    assert_eq!(check_external_adjacency(&line(5).unwrap()), Ok(true));
    assert_eq!(check_external_adjacency(&star(3).unwrap()), Ok(true));
    assert!(matches!(
        check_external_adjacency(&complete(4).unwrap()),
        Err(AnalysisError::PreconditionViolated(_))
    ));
    for g in [line(5).unwrap(), line(2).unwrap(), cycle(6).unwrap()] {
        assert_eq!(check_radius_bound(&g), Ok(true));
    }
}

/// Connected graphs whose internal sets are all singletons.
fn sample_singleton_graphs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = common::rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=12);
        let p = rng.gen_range(1.2..3.0) / n as f64;
        let g = common::gnp(n, p, &mut rng);
        if g.is_connected() && internal_sets_fast(&g).all_singletons {
            out.push(g);
        }
    }
    out
}

#[test]
fn external_adjacency_and_radius_bound_hold() {
    for g in sample_singleton_graphs(300, 42) {
        let el = g.to_edge_list("; ");
        if !internal_graph(&g).is_empty() {
            assert_eq!(check_external_adjacency(&g), Ok(true), "{el}");
        }
        assert_eq!(check_radius_bound(&g), Ok(true), "{el}");
    }
}

proptest! {
    #[test]
    fn adding_an_edge_outside_a_neighbourhood_keeps_internal_vertices(
        g in common::arb_graph(9),
        a in any::<usize>(),
        b in any::<usize>(),
    ) {
        prop_assume!(g.order() >= 2);
        let (a, b) = (a % g.order(), b % g.order());
        prop_assume!(a != b && !g.adjacent(a, b));
        let mut edges = g.edges();
        edges.push((a.min(b), a.max(b)));
        let labels: Vec<_> = g.labels().to_vec();
        let h = Graph::from_edge_list(labels.clone(), edges.iter().map(|&(x, y)| (labels[x].clone(), labels[y].clone()))).unwrap();
        let before = internal_vertex_indices(&g);
        let after = internal_vertex_indices(&h);
        for v in before.iter() {
            let inside = g.neighbors(v).contains(a) && g.neighbors(v).contains(b);
            if !inside {
                prop_assert!(after.contains(v));
            }
        }
    }

    #[test]
    fn distinguish_symmetric_and_reflexive(a in common::arb_graph(7), b in common::arb_graph(7)) {
        let ab = distinguish(&a, &b);
        let ba = distinguish(&b, &a);
        prop_assert_eq!(ab.kind, ba.kind);
        prop_assert!(ab.audit(&a, &b).is_ok());
        let aa = distinguish(&a, &a);
        prop_assert_eq!((aa.kind, aa.basis), (VerdictKind::IsomorphicFactors, Basis::GraphIsomorphic));
        if ab.kind == VerdictKind::NotIsomorphic {
            prop_assert!(ab.reports.iter().all(|r| r.h_rigid && r.connected));
        }
    }
}

#[test]
fn catalog_examples() {
    let ks: Vec<Graph> = (2..=4).map(|n| complete(n).unwrap()).collect();
    assert_eq!(classify_catalog(&ks).classes, vec![vec![0, 1, 2]]);

    let lines: Vec<Graph> = (2..=7).map(|n| line(n).unwrap()).collect();
    let rep = classify_catalog(&lines);
    assert_eq!(rep.classes.len(), 6);
    assert_eq!(rep.separations.len(), 15);

    let cycles: Vec<Graph> = (5..=7).map(|n| cycle(n).unwrap()).collect();
    let rep = classify_catalog(&cycles);
    assert_eq!(rep.classes, vec![vec![0], vec![1], vec![2]]);
    assert!(rep.separations.iter().all(|s| s.2 == Basis::InternalGraph));
}

#[test]
fn verdict_examples() {
    let v = distinguish(&star(3).unwrap(), &star(4).unwrap());
    assert_eq!(v.kind, VerdictKind::Unknown);
    let v = distinguish(&cycle(4).unwrap(), &cycle(5).unwrap());
    assert_eq!(v.kind, VerdictKind::Unknown);
    let two = Graph::from_edge_list(1..=6, [(1, 2), (2, 3), (4, 5), (5, 6), (1, 3), (4, 6)]).unwrap();
    let v = distinguish(&two, &cycle(4).unwrap());
    assert_eq!(v.kind, VerdictKind::Inapplicable);
    assert_eq!(line(5).unwrap().radius(), ExtNat::Fin(2));
}
