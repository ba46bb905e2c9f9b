//! DOT and JSON renderings of clean graphs and their SR-graphs.
//!
//! JSON layout:
//! ```text
//! { "ring": "Z2 x Z3", "graph": "cl2",
//!   "vertices": [ { "id": 0, "idempotent": 1, "unit": 1, "label": "(1,1)" }, ... ],
//!   "edges": [ [0, 3], ... ] }
//! ```
//! `idempotent` and `unit` are element indices in the ring's numbering;
//! `label` uses element names. Edges are `[u, v]` with `u < v`, sorted.

use serde::Serialize;
use std::fmt::Write;
use std::str::FromStr;

use crate::clean::{build_cl, build_cl1, build_cl2, CleanGraph};
use crate::graph::GraphError;
use crate::ring::FiniteRing;
use crate::srg::strong_resolving_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Cl,
    Cl1,
    Cl2,
    ClSrg,
    Cl2Srg,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::Cl => "cl",
            Which::Cl1 => "cl1",
            Which::Cl2 => "cl2",
            Which::ClSrg => "cl-srg",
            Which::Cl2Srg => "cl2-srg",
        }
    }

    pub fn build(self, ring: &FiniteRing) -> Result<CleanGraph, GraphError> {
        Ok(match self {
            Which::Cl => build_cl(ring),
            Which::Cl1 => build_cl1(ring),
            Which::Cl2 => build_cl2(ring),
            Which::ClSrg => strong_resolving_graph(&build_cl(ring))?.srg,
            Which::Cl2Srg => strong_resolving_graph(&build_cl2(ring))?.srg,
        })
    }
}

impl FromStr for Which {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [
            Which::Cl,
            Which::Cl1,
            Which::Cl2,
            Which::ClSrg,
            Which::Cl2Srg,
        ]
        .into_iter()
        .find(|w| w.name() == s)
        .ok_or_else(|| format!("unknown graph `{s}` (expected cl, cl1, cl2, cl-srg, cl2-srg)"))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(graph: &CleanGraph, ring: &FiniteRing, title: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", escape(title)).unwrap();
    for (i, v) in graph.labels().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(&v.render(ring))).unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  n{u} -- n{v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct JsonVertex {
    id: usize,
    idempotent: usize,
    unit: usize,
    label: String,
}

#[derive(Serialize)]
struct JsonGraph<'a> {
    ring: &'a str,
    graph: &'a str,
    vertices: Vec<JsonVertex>,
    edges: Vec<(usize, usize)>,
}

pub fn to_json(graph: &CleanGraph, ring: &FiniteRing, ring_name: &str, which: &str) -> String {
    let doc = JsonGraph {
        ring: ring_name,
        graph: which,
        vertices: graph
            .labels()
            .iter()
            .enumerate()
            .map(|(id, v)| JsonVertex {
                id,
                idempotent: v.idempotent.index(),
                unit: v.unit.index(),
                label: v.render(ring),
            })
            .collect(),
        edges: graph.edges(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("graph serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn dot_for_z2() {
        let r = ring("Z2");
        let dot = to_dot(&build_cl(&r), &r, "Cl(Z2)");
        assert_eq!(
            dot,
            "graph \"Cl(Z2)\" {\n  n0 [label=\"(0,1)\"];\n  n1 [label=\"(1,1)\"];\n  n0 -- n1;\n}\n"
        );
    }

    #[test]
    fn which_names_round_trip() {
        for w in ["cl", "cl1", "cl2", "cl-srg", "cl2-srg"] {
            assert_eq!(w.parse::<Which>().unwrap().name(), w);
        }
        assert!("srg".parse::<Which>().is_err());
    }

    #[test]
    fn srg_of_disconnected_fails() {
        assert_eq!(
            Which::Cl2Srg.build(&ring("Z3")).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn json_counts() {
        let r = ring("Z2 x Z3");
        let g = build_cl2(&r);
        let v: serde_json::Value =
            serde_json::from_str(&to_json(&g, &r, "Z2 x Z3", "cl2")).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(v["edges"].as_array().unwrap().len(), g.edge_count());
    }
}
