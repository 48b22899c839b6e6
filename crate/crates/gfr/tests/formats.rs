use gfr::{parse_dot, parse_edge_list, parse_expression, write_dot, write_edge_list};
use gfr_core::factor::{decompose, graph_to_expression, FactorExpr};
use gfr_core::{Graph, Label};
use proptest::prelude::*;

fn arb_label() -> impl Strategy<Value = Label> {
    prop_oneof![
        (-50i64..200).prop_map(Label::Int),
        "[a-z][a-z0-9_]{0,4}".prop_map(|s| Label::parse(&s)),
    ]
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    proptest::collection::btree_set(arb_label(), 0..9).prop_flat_map(|labels| {
        let labels: Vec<Label> = labels.into_iter().collect();
        let n = labels.len();
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((labels[i].clone(), labels[j].clone()));
                    }
                    k += 1;
                }
            }
            Graph::from_edge_list(labels.clone(), edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn dot_round_trip(g in arb_graph()) {
        prop_assert_eq!(parse_dot(&write_dot(&g, "G")).unwrap(), g);
    }

    #[test]
    fn expression_round_trip(g in arb_graph()) {
        for e in [decompose(&g), graph_to_expression(&g)] {
            let text = e.to_string();
            prop_assert_eq!(parse_expression(&text).unwrap(), e);
        }
    }
}

#[test]
fn spec_parse_examples() {
    let l3 = Graph::from_edge_list(1..=3, [(1, 2), (2, 3)]).unwrap();
    assert_eq!(parse_edge_list("vertices: 1 2 3\n1 2\n2 3\n").unwrap(), l3);
    let abc = Graph::from_edge_list(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
    assert_eq!(parse_dot("graph G { a -- b; b -- c; }").unwrap(), abc);
    assert!(parse_edge_list("1 1\n").is_err());
    assert!(matches!(parse_expression("T[R, LF(2)]").unwrap(), FactorExpr::Tensor(_)));
}
