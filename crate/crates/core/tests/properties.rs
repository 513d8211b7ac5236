use cordiality::makerbreaker::winning_family;
use cordiality::solver::{solve, SolveOptions};
use cordiality::{
    brute_force_value, emit_graph6, new_game, parse_graph6, Graph, Move, Objective, Variant, VertexSet,
};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 0u64..1 << n).prop_map(|(g, bits)| (g, VertexSet::from_bits(bits)))
    })
}

fn variant() -> impl Strategy<Value = Variant> {
    prop_oneof![
        Just(Variant::ADMIRABLE_START),
        Just(Variant::IMPISH_START),
        Just(Variant::IMPISH_START_PASS),
        Just(Variant::IMPISH_START_EARLY_PASS),
    ]
}

fn objective() -> impl Strategy<Value = Objective> {
    prop_oneof![Just(Objective::Cordiality), Just(Objective::Balance)]
}

proptest! {
    #[test]
    fn cut_is_complement_symmetric((g, s) in graph_and_set(12)) {
        let full: VertexSet = (0..g.n()).collect();
        prop_assert_eq!(g.cut(s), g.cut(full.difference(s)));
        let stats = g.cut_stats(s);
        prop_assert_eq!(stats.e0 + stats.e1, g.edge_count());
        let signed = stats.e1 as i32 - stats.e0 as i32;
        prop_assert_eq!(signed.rem_euclid(2), (g.edge_count() % 2) as i32);
    }

    #[test]
    fn graph6_round_trips(g in graph(20)) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn random_playouts_stay_consistent(g in graph(10), v in variant(), picks in proptest::collection::vec(any::<u16>(), 24)) {
        let mut st = new_game(&g, v);
        for p in picks {
            if st.is_terminal() {
                break;
            }
            let moves = st.legal_moves();
            prop_assert!(!moves.is_empty());
            let mv = moves[p as usize % moves.len()];
            st = st.apply_move(mv).unwrap();
            prop_assert!(st.is_consistent());
            prop_assert!(st.passes_used() <= v.impish_pass_budget);
            if mv == Move::Pass {
                prop_assert!(v.pass_on_last_vertex || st.unlabeled().len() >= 2);
            }
        }
    }

    #[test]
    fn solver_agrees_with_oracle(g in graph(7), v in variant(), o in objective()) {
        let s = solve(&g, v, o, &SolveOptions::default()).unwrap().value;
        prop_assert_eq!(s, brute_force_value(&g, v, o).unwrap());
    }

    #[test]
    fn solver_options_do_not_change_the_value(g in graph(8), v in variant(), o in objective(), ab in any::<bool>(), par in any::<bool>(), cap in prop_oneof![Just(0usize), Just(32), Just(1 << 16)]) {
        let opts = SolveOptions { use_alpha_beta: ab, parallel_root: par, table_capacity: cap, ..SolveOptions::default() };
        let want = solve(&g, v, o, &SolveOptions::default()).unwrap().value;
        prop_assert_eq!(solve(&g, v, o, &opts).unwrap().value, want);
    }

    #[test]
    fn cordiality_families_are_complement_closed_and_nested(g in graph(10), k in 0i32..6) {
        let f = winning_family(&g, k, Objective::Cordiality).unwrap();
        let wider = winning_family(&g, k + 1, Objective::Cordiality).unwrap();
        prop_assert!(f.is_complement_closed());
        prop_assert!(f.is_subfamily_of(&wider));
        let b = winning_family(&g, k - 3, Objective::Balance).unwrap();
        prop_assert!(b.is_subfamily_of(&winning_family(&g, k - 2, Objective::Balance).unwrap()));
    }
}
