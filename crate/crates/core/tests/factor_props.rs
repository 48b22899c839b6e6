mod common;

use std::collections::BTreeMap;

use gfr_core::catalog;
use gfr_core::factor::*;
use gfr_core::Graph;
use num_rational::Ratio;
use proptest::prelude::*;

fn arb_param() -> impl Strategy<Value = Rational> {
    // s = 1 + p/q > 1
    (1i128..40, 1i128..12).prop_map(|(p, q)| integer(1) + rational(p, q))
}

fn arb_positive() -> impl Strategy<Value = Rational> {
    (1i128..40, 1i128..40).prop_map(|(p, q)| rational(p, q))
}

fn arb_expr() -> impl Strategy<Value = FactorExpr> {
    let leaf = prop_oneof![
        1 => Just(FactorExpr::Unit),
        4 => Just(FactorExpr::R),
        3 => arb_param().prop_map(FactorExpr::Fgf),
    ];
    leaf.prop_recursive(4, 32, 5, |inner| {
        prop_oneof![
            proptest::collection::vec(inner.clone(), 0..5).prop_map(FactorExpr::Tensor),
            proptest::collection::vec(inner, 0..5).prop_map(FactorExpr::Free),
        ]
    })
}

fn has_opaque(e: &FactorExpr) -> bool {
    e.any(&|x| matches!(x, FactorExpr::Opaque(_)))
}

fn has_tensor(e: &FactorExpr) -> bool {
    e.any(&|x| matches!(x, FactorExpr::Tensor(_)))
}

fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.order();
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(x, y)| (x + shift, y + shift)));
    let n = a.order() + b.order();
    Graph::from_edge_list(1..=n as i64, edges.into_iter().map(|(x, y)| (x as i64 + 1, y as i64 + 1))).unwrap()
}

fn join(a: &Graph, b: &Graph) -> Graph {
    disjoint_union(&a.complement(), &b.complement()).complement()
}

/// Every cograph on at most `max_n` vertices, keyed by order and canonical code.
fn cographs(max_n: usize) -> BTreeMap<(usize, u64), Graph> {
    let mut by_order: Vec<Vec<Graph>> = vec![Vec::new(); max_n + 1];
    let mut seen = BTreeMap::new();
    let k1 = gfr_core::families::complete(1).unwrap();
    seen.insert((1, catalog::code_of(&k1)), k1.clone());
    by_order[1].push(k1);
    for n in 2..=max_n {
        let mut found = Vec::new();
        for a in 1..n {
            let b = n - a;
            if a > b {
                break;
            }
            for x in &by_order[a] {
                for y in &by_order[b] {
                    for g in [disjoint_union(x, y), join(x, y)] {
                        let code = (n, catalog::code_of(&g));
                        if !seen.contains_key(&code) {
                            seen.insert(code, g.clone());
                            found.push(g);
                        }
                    }
                }
            }
        }
        by_order[n] = found;
    }
    seen
}

#[test]
fn cographs_have_no_opaque_leaf() {
    let co = cographs(6);
    for g in catalog::graphs_up_to(6).iter().skip(1) {
        let e = graph_to_expression(g);
        let is_cograph = co.contains_key(&(g.order(), catalog::code_of(g)));
        assert_eq!(!has_opaque(&e), is_cograph, "{} -> {e}", g.to_edge_list("; "));
    }
    // cograph counts on 1..=6 vertices: 1, 2, 4, 10, 24, 66
    let mut counts = [0usize; 7];
    for g in co.values() {
        counts[g.order()] += 1;
    }
    assert_eq!(&counts[1..], &[1, 2, 4, 10, 24, 66]);
}

#[test]
fn quasi_strong_solidity_matches_normal_form() {
    for g in catalog::graphs_up_to(7) {
        let e = graph_to_expression(&g);
        let plain = !has_tensor(&e) && !has_opaque(&e);
        assert_eq!(is_quasi_strongly_solid(&g), plain, "{} -> {e}", g.to_edge_list("; "));
        if plain {
            assert!(matches!(e, FactorExpr::Unit | FactorExpr::R | FactorExpr::Fgf(_)), "{e}");
        }
    }
}

#[test]
fn catalog_expressions_idempotent_and_replay() {
    for g in catalog::graphs_up_to(6) {
        let raw = decompose(&g);
        for strict in [false, true] {
            let s = simplify_with(&raw, strict);
            assert_eq!(s.trace.replay(&raw).unwrap(), s.expr);
            let again = simplify_with(&s.expr, strict);
            assert_eq!(again.expr, s.expr);
            assert!(again.trace.is_empty());
            if strict {
                assert!(!s.trace.uses_extension());
            }
        }
    }
}

#[test]
fn spec_examples() {
    let fr = |n| FactorExpr::Free(vec![FactorExpr::R; n]);
    for n in 2..=6 {
        assert_eq!(simplify(&fr(n)).expr, FactorExpr::Fgf(integer(n as i128)));
    }
    assert_eq!(simplify(&FactorExpr::Tensor(vec![FactorExpr::R; 2])).expr, FactorExpr::R);
    let f2r = FactorExpr::Free(vec![FactorExpr::Fgf(integer(2)), FactorExpr::R]);
    assert_eq!(simplify(&f2r).expr, FactorExpr::Fgf(integer(3)));
    let l3 = gfr_core::families::line(3).unwrap();
    assert_eq!(
        graph_to_expression(&l3),
        FactorExpr::Tensor(vec![FactorExpr::R, FactorExpr::Fgf(integer(2))])
    );
    let z5 = gfr_core::families::cycle(5).unwrap();
    assert!(matches!(graph_to_expression(&z5), FactorExpr::Opaque(_)));
    assert_eq!(amplify_fgf(integer(3), integer(2)), Ok(integer(2)));
    assert_eq!(amplify_fgf(integer(3), rational(1, 2)), Ok(integer(5)));
    assert!(amplify_fgf(integer(1), integer(2)).is_err());
    assert!(amplify_fgf(integer(3), integer(0)).is_err());
    assert!(provably_equal(&FactorExpr::Fgf(integer(2)), &FactorExpr::Fgf(integer(3))).is_none());
}

proptest! {
    #[test]
    fn simplify_idempotent_and_replays(e in arb_expr(), strict in any::<bool>()) {
        let s = simplify_with(&e, strict);
        prop_assert_eq!(s.trace.replay(&e).unwrap(), s.expr.clone());
        let again = simplify_with(&s.expr, strict);
        prop_assert_eq!(&again.expr, &s.expr);
        prop_assert!(again.trace.is_empty());
        if strict {
            prop_assert!(!s.trace.uses_extension());
        }
    }

    #[test]
    fn amplification_inverts(s in arb_param(), r in arb_positive()) {
        let t = amplify_fgf(s, r).unwrap();
        prop_assert!(t > integer(1));
        prop_assert_eq!(amplify_fgf(t, r.recip()).unwrap(), s);
        prop_assert_eq!(amplify_fgf(s, integer(1)).unwrap(), s);
    }

    #[test]
    fn amplify_moves_preserve_invariant_and_are_certified(
        params in proptest::collection::vec(arb_param(), 2..5),
        extra_r in any::<bool>(),
        pick in (any::<usize>(), any::<usize>()),
        r in arb_positive(),
    ) {
        let mut children: Vec<FactorExpr> = params.into_iter().map(FactorExpr::Fgf).collect();
        if extra_r {
            children.push(FactorExpr::R);
        }
        let e = simplify(&FactorExpr::Tensor(children)).expr;
        let n = params_len(&e);
        let left = pick.0 % n + usize::from(extra_r);
        let right = (left - usize::from(extra_r) + 1 + pick.1 % (n - 1)) % n + usize::from(extra_r);
        let moved = Rule::Amplify { left, right, ratio: r }.apply(&e).unwrap();
        let (c0, p0, rest0) = tensor_invariant(&e).unwrap();
        let (c1, p1, rest1) = tensor_invariant(&moved).unwrap();
        prop_assert_eq!((c0, p0, &rest0), (c1, p1, &rest1));
        let target = simplify(&moved).expr;
        let trace = provably_equal(&e, &target).expect("certificate");
        prop_assert_eq!(trace.replay(&e).unwrap(), target);
    }

    #[test]
    fn different_invariants_give_no_certificate(a in arb_param(), b in arb_param(), c in arb_param(), d in arb_param()) {
        let x = simplify(&FactorExpr::Tensor(vec![FactorExpr::Fgf(a), FactorExpr::Fgf(b)])).expr;
        let y = simplify(&FactorExpr::Tensor(vec![FactorExpr::Fgf(c), FactorExpr::Fgf(d)])).expr;
        let same = (a - 1) * (b - 1) == (c - 1) * (d - 1);
        prop_assert_eq!(provably_equal(&x, &y).is_some(), same);
    }
}

fn params_len(e: &FactorExpr) -> usize {
    tensor_invariant(e).unwrap().0
}

#[test]
fn ratio_type_is_exact() {
    let s: Rational = Ratio::new(7, 2);
    assert_eq!(FactorExpr::Fgf(s).to_string(), "LF(7/2)");
}
