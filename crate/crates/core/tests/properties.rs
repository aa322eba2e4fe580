mod common;

use std::collections::{BTreeMap, BTreeSet};

use pbdraw::graph::transitive_closure;
use pbdraw::io::gen_random_dag_with_edges;
use pbdraw::layout::segment_hits_vertex;
use pbdraw::metrics::{count_bends, count_crossings};
use pbdraw::variants::{apply, jumping_cross_edges};
use pbdraw::{
    build_decomposition_graph, condense, greedy_decompose, min_path_cover, topo_sort, Dag, Digraph,
    Variant,
};
use proptest::prelude::*;

use common::*;

fn dag_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n, 0.0..0.6f64, any::<u64>()).prop_map(|(n, frac, seed)| {
        let max = n * (n - 1) / 2;
        let m = ((max as f64) * frac).round() as usize;
        gen_random_dag_with_edges(n, m, seed).unwrap()
    })
}

fn digraph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=12usize).prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..30)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn condensation_matches_mutual_reachability((n, edges) in digraph_strategy()) {
        let g = Digraph::from_edges(n, edges.clone()).unwrap().0;
        let dag = condense(&g);
        let comps = brute_scc(n, &edges);
        prop_assert_eq!(dag.vertex_count(), comps.len());
        for (c, members) in comps.iter().enumerate() {
            for &v in members {
                prop_assert_eq!(dag.supernode_map()[v], c);
            }
        }
        let quotient: BTreeSet<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (dag.supernode_map()[u], dag.supernode_map()[v]))
            .filter(|(a, b)| a != b)
            .collect();
        let got: BTreeSet<(usize, usize)> = dag.graph().edges().iter().copied().collect();
        prop_assert_eq!(got, quotient);
    }

    #[test]
    fn topo_order_is_one_of_all_orders(g in dag_strategy(7)) {
        let dag = Dag::new(g.clone()).unwrap();
        let t = topo_sort(&dag).unwrap();
        let all = all_topo_orders(g.vertex_count(), g.edges());
        prop_assert!(all.contains(&t.order().to_vec()));
    }

    #[test]
    fn closure_matches_warshall(g in dag_strategy(30)) {
        let dag = Dag::new(g.clone()).unwrap();
        let c = transitive_closure(&dag);
        let w = warshall(g.vertex_count(), g.edges());
        for (u, row) in w.iter().enumerate() {
            for (v, &r) in row.iter().enumerate() {
                prop_assert_eq!(c.reaches(u, v), r, "pair ({}, {})", u, v);
            }
        }
    }

    #[test]
    fn min_cover_is_optimal(g in dag_strategy(8)) {
        let dag = Dag::new(g.clone()).unwrap();
        let min = min_path_cover(&dag);
        let greedy = greedy_decompose(&dag);
        prop_assert_eq!(min.k(), exhaustive_min_cover(g.vertex_count(), g.edges()));
        prop_assert!(min.k() <= greedy.k());
    }

    #[test]
    fn decomposition_graph_keeps_closure(g in dag_strategy(40), greedy in any::<bool>()) {
        let dag = Dag::new(g.clone()).unwrap();
        let sp = if greedy { greedy_decompose(&dag) } else { min_path_cover(&dag) };
        let h = build_decomposition_graph(&dag, &sp);
        let n = g.vertex_count();
        let hp: Vec<(usize, usize)> = h.edges().iter().map(|e| e.pair()).collect();
        prop_assert_eq!(warshall(n, &hp), warshall(n, g.edges()));
        // every removed edge runs forward along a single path
        for &(u, v) in h.removed() {
            prop_assert_eq!(sp.path_of(u), sp.path_of(v));
            prop_assert!(sp.position(u) + 1 < sp.position(v));
        }
    }

    #[test]
    fn variants_keep_closure_and_geometry(g in dag_strategy(40), greedy in any::<bool>()) {
        let dag = Dag::new(g.clone()).unwrap();
        let sp = if greedy { greedy_decompose(&dag) } else { min_path_cover(&dag) };
        let t = topo_sort(&dag).unwrap();
        let h = build_decomposition_graph(&dag, &sp);
        let n = g.vertex_count();
        let truth = dfs_closure(n, g.edges());
        for v in Variant::ALL {
            let vd = apply(&h, v);
            let reach: Vec<(usize, usize)> = vd.reachability_edges(&h).collect();
            prop_assert_eq!(&dfs_closure(n, &reach), &truth, "variant {}", v);
            let layout = pbdraw::layout::draw(&h, &t, &vd).unwrap();
            let coords = layout.coords();
            for e in layout.edges() {
                let poly = e.polyline(coords);
                prop_assert!(poly.len() <= 3);
                for w in poly.windows(2) {
                    prop_assert_eq!(segment_hits_vertex(w[0], w[1], coords), None);
                }
            }
            prop_assert_eq!(count_crossings(&layout), naive_crossings(&layout));
        }
    }

    #[test]
    fn variant_algebra(g in dag_strategy(40)) {
        let dag = Dag::new(g).unwrap();
        let t = topo_sort(&dag).unwrap();
        let h = build_decomposition_graph(&dag, &min_path_cover(&dag));
        let d: BTreeMap<Variant, _> = Variant::ALL.iter().map(|&v| (v, apply(&h, v))).collect();
        let bends = |v: Variant| count_bends(&pbdraw::layout::draw(&h, &t, &d[&v]).unwrap());
        use Variant::*;
        prop_assert_eq!(d[&Baseline].drawn_pairs(), d[&JumpingBends].drawn_pairs());
        prop_assert_eq!(d[&JumpingBends].forced_bends(), &jumping_cross_edges(&h));
        let both: BTreeSet<_> = d[&EarliestTarget]
            .drawn_pairs()
            .intersection(&d[&LatestSource].drawn_pairs())
            .copied()
            .collect();
        prop_assert_eq!(d[&Combined].drawn_pairs(), both);
        prop_assert_eq!(d[&BaselineCrossOnly].drawn_pairs(), d[&Baseline].cross_pairs());
        prop_assert_eq!(d[&CombinedCrossOnly].drawn_pairs(), d[&Combined].cross_pairs());
        prop_assert_eq!(bends(BaselineCrossOnly), bends(Baseline));
        prop_assert_eq!(bends(CombinedCrossOnly), bends(Combined));
        // an obstruction bend and a forced bend on the same edge are the same point
        let plain = pbdraw::layout::draw(&h, &t, &d[&Baseline]).unwrap();
        let forced = pbdraw::layout::draw(&h, &t, &d[&JumpingBends]).unwrap();
        for (a, b) in plain.edges().iter().zip(forced.edges()) {
            prop_assert_eq!((a.source, a.target), (b.source, b.target));
            if a.bend.is_some() {
                prop_assert_eq!(a.bend, b.bend);
            }
        }
    }

    #[test]
    fn combined_keeps_one_dominating_edge(g in dag_strategy(40)) {
        let dag = Dag::new(g).unwrap();
        let h = build_decomposition_graph(&dag, &min_path_cover(&dag));
        let sp = h.decomposition();
        let kept = apply(&h, Variant::Combined).cross_pairs();
        for e in h.cross_edges() {
            let (u, v) = e.pair();
            let ok = kept.iter().any(|&(a, b)| {
                sp.path_of(a) == sp.path_of(u)
                    && sp.path_of(b) == sp.path_of(v)
                    && sp.position(a) >= sp.position(u)
                    && sp.position(b) <= sp.position(v)
            });
            prop_assert!(ok, "no dominating edge for ({}, {})", u, v);
        }
    }

    #[test]
    fn index_answers_like_closure(g in dag_strategy(120), greedy in any::<bool>()) {
        let dag = Dag::new(g.clone()).unwrap();
        let sp = if greedy { greedy_decompose(&dag) } else { min_path_cover(&dag) };
        let t = topo_sort(&dag).unwrap();
        let h = build_decomposition_graph(&dag, &sp);
        let idx = pbdraw::build_index(&h, &t);
        let n = g.vertex_count();
        prop_assert_eq!(idx.size(), n * sp.k());
        let truth = dfs_closure(n, g.edges());
        for (u, row) in truth.iter().enumerate() {
            for (v, &r) in row.iter().enumerate() {
                prop_assert_eq!(idx.query(u, v).unwrap(), r);
            }
        }
    }

    #[test]
    fn index_from_combined_cross_only_matches_full(g in dag_strategy(80)) {
        let dag = Dag::new(g).unwrap();
        let t = topo_sort(&dag).unwrap();
        let h = build_decomposition_graph(&dag, &min_path_cover(&dag));
        let full = pbdraw::build_index(&h, &t);
        let slim = apply(&h, Variant::CombinedCrossOnly);
        let pairs = slim.drawn_pairs();
        let from_slim = pbdraw::reach::build_index_from_edges(h.decomposition(), &t, pairs);
        prop_assert_eq!(full, from_slim);
    }
}
