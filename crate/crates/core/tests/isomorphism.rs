//! Isomorphism search against an all-permutations oracle.

mod common;

use std::collections::HashMap;

use gfr_core::catalog;
use gfr_core::iso::{are_isomorphic, fingerprint, verify_mapping};
use gfr_core::Graph;
use proptest::prelude::*;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least sorted edge list over all vertex orders.
fn brute_canonical(g: &Graph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = g
                .edges()
                .into_iter()
                .map(|(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                .collect();
            e.sort();
            e
        })
        .min()
        .unwrap()
}

#[test]
fn catalog_pairs_up_to_six() {
    let graphs = catalog::graphs_up_to(6);
    let perms: HashMap<usize, Vec<Vec<usize>>> = (0..=6).map(|n| (n, permutations(n))).collect();
    let canon: Vec<_> = graphs.iter().map(|g| brute_canonical(g, &perms[&g.order()])).collect();
    for (i, a) in graphs.iter().enumerate() {
        for (j, b) in graphs.iter().enumerate() {
            if a.order() != b.order() {
                continue;
            }
            let r = are_isomorphic(a, b);
            let expected = a.order() == b.order() && canon[i] == canon[j];
            assert_eq!(r.isomorphic, expected, "{} vs {}", a.to_edge_list("; "), b.to_edge_list("; "));
            assert_eq!(i == j, expected, "catalog contains duplicates");
            if let Some(m) = &r.mapping {
                assert!(verify_mapping(a, b, m));
            }
        }
    }
}

#[test]
fn line_vs_star() {
    let l4 = gfr_core::families::line(4).unwrap();
    let s3 = gfr_core::families::star(3).unwrap();
    assert_eq!(fingerprint(&l4).degrees, vec![1, 1, 2, 2]);
    assert_eq!(fingerprint(&s3).degrees, vec![1, 1, 1, 3]);
    assert!(!are_isomorphic(&l4, &s3).isomorphic);
}

proptest! {
    #[test]
    fn relabelled_copies_are_isomorphic(g in common::arb_graph(11), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut common::rng(seed));
        let h = common::relabel(&g, &perm);
        prop_assert_eq!(fingerprint(&g), fingerprint(&h));
        let r = are_isomorphic(&g, &h);
        prop_assert!(r.isomorphic);
        prop_assert!(verify_mapping(&g, &h, r.mapping.as_ref().unwrap()));
    }

    #[test]
    fn isomorphism_implies_equal_fingerprints(a in common::arb_graph(7), b in common::arb_graph(7)) {
        let r = are_isomorphic(&a, &b);
        if r.isomorphic {
            prop_assert_eq!(fingerprint(&a), fingerprint(&b));
            prop_assert!(verify_mapping(&a, &b, r.mapping.as_ref().unwrap()));
        }
        prop_assert_eq!(r.isomorphic, are_isomorphic(&b, &a).isomorphic);
    }
}
