use proptest::prelude::*;

use cleansdim_core::clean::{build_cl, build_cl2, clean_adjacent};
use cleansdim_core::graph::{all_pairs_distances, same_labeled_graph, Graph};
use cleansdim_core::ring::{build_ring, FiniteRing, RingSpec};
use cleansdim_core::solver::{
    is_independent, is_strong_resolving_set, is_vertex_cover, max_independent_set,
    min_vertex_cover, sdim_bruteforce, sdim_via_srg,
};
use cleansdim_core::srg::strong_resolving_graph;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph<usize>> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new((0..n).collect());
            let mut k = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Random graph with a spanning path added, so it is connected.
fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph<usize>> {
    arb_graph(max_n).prop_map(|mut g| {
        for v in 1..g.order() {
            if !g.has_edge(v - 1, v) {
                g.add_edge(v - 1, v);
            }
        }
        g
    })
}

fn brute_beta(g: &Graph<usize>) -> usize {
    (0u32..1 << g.order())
        .filter(|&m| {
            g.edges()
                .iter()
                .all(|&(u, v)| m >> u & 1 == 0 || m >> v & 1 == 0)
        })
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap()
}

const SMALL_RINGS: [&str; 12] = [
    "Z2",
    "Z3",
    "Z4",
    "Z6",
    "Z8",
    "Z9",
    "Z10",
    "Z12",
    "GF(4)",
    "Z2 x Z3",
    "Z2[x]/(x^2)",
    "Z4[x]/(2x, x^2-2)",
];

fn small_ring() -> impl Strategy<Value = FiniteRing> {
    proptest::sample::select(SMALL_RINGS.to_vec())
        .prop_map(|s| build_ring(&s.parse::<RingSpec>().unwrap()).unwrap())
}

proptest! {
    #[test]
    fn distances_symmetric_and_triangular(g in arb_graph(12)) {
        let d = all_pairs_distances(&g);
        let n = g.order();
        for u in 0..n {
            prop_assert_eq!(d.get(u, u), Some(0));
            for v in 0..n {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                if g.has_edge(u, v) {
                    prop_assert_eq!(d.get(u, v), Some(1));
                }
                for w in 0..n {
                    if let (Some(a), Some(b)) = (d.get(u, w), d.get(w, v)) {
                        prop_assert!(d.get(u, v).is_some_and(|x| x <= a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn induced_on_everything_is_identity(g in arb_graph(12)) {
        let all: Vec<usize> = (0..g.order()).collect();
        prop_assert!(same_labeled_graph(&g, &g.induced_on(&all)).unwrap());
        prop_assert!(same_labeled_graph(&g, &g.induced_subgraph(|_, _| true)).unwrap());
    }

    #[test]
    fn mis_is_maximum_and_gallai_holds(g in arb_graph(13)) {
        let mis = max_independent_set(&g);
        let cover = min_vertex_cover(&g);
        prop_assert!(is_independent(&g, &mis));
        prop_assert!(is_vertex_cover(&g, &cover));
        prop_assert_eq!(mis.len(), brute_beta(&g));
        prop_assert_eq!(mis.len() + cover.len(), g.order());
    }

    #[test]
    fn solvers_are_deterministic(g in arb_connected(11)) {
        prop_assert_eq!(max_independent_set(&g), max_independent_set(&g));
        prop_assert_eq!(sdim_bruteforce(&g, 18).unwrap(), sdim_bruteforce(&g, 18).unwrap());
    }

    #[test]
    fn oracle_equals_srg_cover(g in arb_connected(10)) {
        let witness = sdim_bruteforce(&g, 18).unwrap();
        let d = all_pairs_distances(&g);
        prop_assert!(is_strong_resolving_set(&d, &witness));
        prop_assert_eq!(witness.len(), sdim_via_srg(&g).unwrap().alpha_srg);
    }

    #[test]
    fn srg_edges_are_mmd_pairs(g in arb_connected(12)) {
        let sr = strong_resolving_graph(&g).unwrap();
        prop_assert_eq!(sr.srg.edge_count(), sr.mmd_pairs.len());
        for &(u, v) in &sr.mmd_pairs {
            prop_assert!(sr.boundary.binary_search(&u).is_ok());
            prop_assert!(sr.boundary.binary_search(&v).is_ok());
        }
    }

    #[test]
    fn clean_graph_shape(r in small_ring()) {
        let cl = build_cl(&r);
        let (ids, units) = (r.idempotents().len(), r.units().len());
        prop_assert_eq!(cl.order(), ids * units);
        prop_assert_eq!(build_cl2(&r).order(), (ids - 1) * units);
        for u in 0..cl.order() {
            for v in (u + 1)..cl.order() {
                let (a, b) = (*cl.label(u), *cl.label(v));
                prop_assert_eq!(cl.has_edge(u, v), clean_adjacent(&r, a, b));
                prop_assert_eq!(clean_adjacent(&r, a, b), clean_adjacent(&r, b, a));
            }
        }
        // every e = 0 vertex is adjacent to everything else
        for u in (0..cl.order()).filter(|&u| cl.label(u).idempotent == r.zero()) {
            prop_assert_eq!(cl.degree(u), cl.order() - 1);
        }
    }
}
