mod common;

use proptest::prelude::*;

use common::{cycle, graph};
use tcmg_core::{Coalition, Graph, GraphError, GraphFormat};

#[test]
fn parse_json_triangle() {
    let g = Graph::parse(r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#, GraphFormat::Json).unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
}

#[test]
fn parse_edgelist_path() {
    let g = Graph::parse("0 1\n1 2", GraphFormat::EdgeList).unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
}

#[test]
fn parse_edgelist_skips_comments_and_blanks() {
    let g = Graph::parse("# header\n\n2 0\n  \n# x\n1 2\n", GraphFormat::EdgeList).unwrap();
    assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
}

#[test]
fn parse_rejects_self_loop() {
    let err = Graph::parse(r#"{"n":2,"edges":[[0,0]]}"#, GraphFormat::Json).unwrap_err();
    assert!(matches!(err, GraphError::SelfLoop { vertex: 0, .. }), "{err}");
}

#[test]
fn parse_rejects_bad_input_with_position() {
    for (text, fmt) in [
        (r#"{"n":2,"edges":[[0,2]]}"#, GraphFormat::Json),
        (r#"{"n":3,"edges":[[0,1],[1,0]]}"#, GraphFormat::Json),
        (r#"{"n":3,"edges":[[0,1]"#, GraphFormat::Json),
        ("0 1\n1 x\n", GraphFormat::EdgeList),
        ("0 1\n1 1\n", GraphFormat::EdgeList),
        ("0 1 2\n", GraphFormat::EdgeList),
    ] {
        let err = Graph::parse(text, fmt).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") || msg.contains("edge"), "{msg}");
    }
}

#[test]
fn induced_subgraphs() {
    let k3 = common::complete(3);
    let (h, map) = k3.induced_subgraph(&Coalition::from_iter([0, 1])).unwrap();
    assert_eq!((h.vertex_count(), h.edge_count(), map), (2, 1, vec![0, 1]));
    let (h, _) = k3.induced_subgraph(&Coalition::from_iter([0])).unwrap();
    assert_eq!((h.vertex_count(), h.edge_count()), (1, 0));
    let (h, map) = cycle(6).induced_subgraph(&Coalition::from_iter([0, 2, 4])).unwrap();
    assert_eq!((h.vertex_count(), h.edge_count(), map), (3, 0, vec![0, 2, 4]));
    assert!(k3.induced_subgraph(&Coalition::from_iter([3])).is_err());
}

#[test]
fn induced_on_all_vertices_is_identity() {
    let g = common::petersen();
    let (h, map) = g.induced_subgraph(&g.vertices()).unwrap();
    assert_eq!(h, g);
    assert_eq!(map, (0..10).collect::<Vec<_>>());
}

#[test]
fn connected_components_examples() {
    let two = graph(4, &[(0, 1), (2, 3)]);
    let members = |g: &Graph| g.connected_components().iter().map(Coalition::members).collect::<Vec<_>>();
    assert_eq!(members(&two), vec![vec![0, 1], vec![2, 3]]);
    assert_eq!(members(&cycle(6)), vec![vec![0, 1, 2, 3, 4, 5]]);
    assert_eq!(members(&Graph::empty(3)), vec![vec![0], vec![1], vec![2]]);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..12).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..30).prop_map(move |pairs| {
            let edges: std::collections::BTreeSet<_> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            Graph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn json_round_trip(g in arb_graph()) {
        prop_assert_eq!(Graph::parse(&g.to_json(), GraphFormat::Json).unwrap(), g);
    }

    #[test]
    fn edgelist_round_trip_when_last_vertex_has_an_edge(g in arb_graph()) {
        let last = g.vertex_count() - 1;
        prop_assume!(g.degree(last) > 0);
        prop_assert_eq!(Graph::parse(&g.to_edgelist(), GraphFormat::EdgeList).unwrap(), g);
    }

    #[test]
    fn components_partition_vertices(g in arb_graph()) {
        let comps = g.connected_components();
        let mut seen = Coalition::new();
        for c in &comps {
            prop_assert!(seen.is_disjoint(c));
            seen = seen.union(c);
        }
        prop_assert_eq!(seen, g.vertices());
    }
}
