use serde::Deserialize;

use cleansdim_core::clean::{CleanGraph, CleanVertex};
use cleansdim_core::export::{to_dot, to_json, Which};
use cleansdim_core::graph::{first_edge_difference, Graph};
use cleansdim_core::ring::{build_ring, FiniteRing, RingElement};

#[derive(Deserialize)]
struct Vertex {
    id: usize,
    idempotent: usize,
    unit: usize,
    label: String,
}

#[derive(Deserialize)]
struct Doc {
    ring: String,
    graph: String,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

fn read_json(text: &str) -> (Doc, CleanGraph) {
    let doc: Doc = serde_json::from_str(text).unwrap();
    let labels = doc
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| {
            assert_eq!(v.id, i);
            CleanVertex::new(RingElement::new(v.idempotent), RingElement::new(v.unit))
        })
        .collect();
    let g = Graph::from_edges(labels, doc.edges.iter().copied());
    (doc, g)
}

fn ring(s: &str) -> FiniteRing {
    build_ring(&s.parse().unwrap()).unwrap()
}

#[test]
fn json_round_trip_reconstructs_graph() {
    for s in ["Z2", "Z5", "Z2 x Z3", "Z2 x GF(4)", "Z4[x]/(2x, x^2)"] {
        let r = ring(s);
        for which in ["cl", "cl1", "cl2", "cl-srg", "cl2-srg"] {
            let w: Which = which.parse().unwrap();
            let Ok(g) = w.build(&r) else {
                continue;
            };
            let text = to_json(&g, &r, s, which);
            let (doc, back) = read_json(&text);
            assert_eq!((doc.ring.as_str(), doc.graph.as_str()), (s, which));
            assert_eq!(
                first_edge_difference(&g, &back).unwrap(),
                None,
                "{s} {which}"
            );
            for (v, label) in doc.vertices.iter().zip(g.labels()) {
                assert_eq!(v.label, label.render(&r));
            }
        }
    }
}

#[test]
fn exports_are_byte_stable() {
    let r = ring("Z2 x Z3");
    let g = Which::Cl.build(&r).unwrap();
    assert_eq!(to_json(&g, &r, "x", "cl"), to_json(&g, &r, "x", "cl"));
    assert_eq!(
        to_dot(&g, &r, "x"),
        to_dot(&Which::Cl.build(&r).unwrap(), &r, "x")
    );
}

#[test]
fn field_srg_dot_is_two_cliques() {
    let r = ring("Z5");
    let dot = to_dot(&Which::ClSrg.build(&r).unwrap(), &r, "Z5");
    assert_eq!(dot.matches("[label=").count(), 8);
    assert_eq!(dot.matches(" -- ").count(), 12);
}

#[test]
fn cl2_json_vertex_count() {
    // (|Id| - 1)|U| = 3 * 2
    let r = ring("Z2 x Z3");
    let (doc, _) = read_json(&to_json(
        &Which::Cl2.build(&r).unwrap(),
        &r,
        "Z2 x Z3",
        "cl2",
    ));
    assert_eq!(doc.vertices.len(), 6);
}
