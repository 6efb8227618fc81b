use bubblesim_core::graph::{
    bubbling_from_path_decomposition, exact_bubble_width, exact_path_width, greedy_bubbling,
    path_decomposition_from_bubbling, Bubbling, CircuitGraph,
};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = CircuitGraph> {
    (2usize..=8).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 1..=14).prop_map(move |pairs| {
            let edges = pairs.into_iter().filter(|(u, v)| u != v).collect();
            CircuitGraph::new(n, edges).unwrap()
        })
    })
}

fn all_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for v in 0..n {
        out = out
            .into_iter()
            .flat_map(|o| {
                (0..=o.len()).map(move |i| {
                    let mut o2 = o.clone();
                    o2.insert(i, v);
                    o2
                })
            })
            .collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_width_is_a_lower_bound_and_achieved(g in graph_strategy()) {
        let (w, b) = exact_bubble_width(&g).unwrap();
        prop_assert_eq!(b.width(&g).unwrap(), w);
        prop_assert!(greedy_bubbling(&g).width(&g).unwrap() >= w);
        if g.num_vertices() <= 6 {
            let brute = all_orders(g.num_vertices())
                .into_iter()
                .map(|o| Bubbling::new(o).width(&g).unwrap())
                .min()
                .unwrap();
            prop_assert_eq!(brute, w);
        }
    }

    #[test]
    fn conversions_respect_the_width_sandwich(g in graph_strategy()) {
        let (bw, b) = exact_bubble_width(&g).unwrap();
        let pd = path_decomposition_from_bubbling(&g, &b).unwrap();
        pd.validate(&g).unwrap();
        prop_assert!(pd.width() <= 2 * bw.max(1));
        let (pw, witness) = exact_path_width(&g).unwrap();
        prop_assert!(pd.width() >= pw || g.num_edges() == 0);
        let back = bubbling_from_path_decomposition(&g, &pd).unwrap();
        prop_assert!(back.width(&g).unwrap() <= g.max_degree() * pd.width());
        prop_assert!(witness.check(&g).is_ok());
    }

    #[test]
    fn bubbling_file_round_trip(order in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let b = Bubbling::new(order);
        prop_assert_eq!(Bubbling::parse(&b.to_string()).unwrap(), b);
    }
}

#[test]
fn reference_graphs() {
    let path = CircuitGraph::parse_edge_list("p 5 4\n0 1\n1 2\n2 3\n3 4\n").unwrap();
    assert_eq!(exact_bubble_width(&path).unwrap().0, 1);
    let star = CircuitGraph::parse_edge_list("p 5 4\n0 1\n0 2\n0 3\n0 4\n").unwrap();
    assert_eq!(exact_bubble_width(&star).unwrap().0, 2);
    let k4 = CircuitGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(exact_bubble_width(&k4).unwrap().0, 4);
}
