//! Clean graphs: vertices are pairs (e, u) of an idempotent and a unit, and
//! (e, u) ~ (f, v) iff ef = 0 or uv = 1.

use serde::Serialize;
use std::fmt;

use crate::graph::Graph;
use crate::ring::{FiniteRing, RingElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CleanVertex {
    pub idempotent: RingElement,
    pub unit: RingElement,
}

impl CleanVertex {
    pub fn new(idempotent: RingElement, unit: RingElement) -> Self {
        CleanVertex { idempotent, unit }
    }

    /// `(e,u)` using the ring's element names.
    pub fn render(&self, ring: &FiniteRing) -> String {
        format!("({},{})", ring.name(self.idempotent), ring.name(self.unit))
    }
}

impl fmt::Display for CleanVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.idempotent, self.unit)
    }
}

pub type CleanGraph = Graph<CleanVertex>;

pub fn clean_adjacent(ring: &FiniteRing, a: CleanVertex, b: CleanVertex) -> bool {
    a != b
        && (ring.mul(a.idempotent, b.idempotent) == ring.zero()
            || ring.mul(a.unit, b.unit) == ring.one())
}

/// Id(R) x U(R) in lexicographic (idempotent, unit) order.
pub fn clean_vertices(ring: &FiniteRing) -> Vec<CleanVertex> {
    let mut out: Vec<CleanVertex> = ring
        .idempotents()
        .iter()
        .flat_map(|&e| ring.units().iter().map(move |&u| CleanVertex::new(e, u)))
        .collect();
    out.sort_unstable();
    out
}

/// Graph on `vertices` with the given adjacency rule.
pub fn graph_on(
    vertices: Vec<CleanVertex>,
    adjacent: impl Fn(CleanVertex, CleanVertex) -> bool,
) -> CleanGraph {
    let mut g = Graph::new(vertices);
    let n = g.order();
    for i in 0..n {
        for j in (i + 1)..n {
            if adjacent(*g.label(i), *g.label(j)) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn build_cl(ring: &FiniteRing) -> CleanGraph {
    graph_on(clean_vertices(ring), |a, b| clean_adjacent(ring, a, b))
}

/// Induced on e = 0.
pub fn build_cl1(ring: &FiniteRing) -> CleanGraph {
    build_cl(ring).induced_subgraph(|_, v| v.idempotent == ring.zero())
}

/// Induced on e != 0.
pub fn build_cl2(ring: &FiniteRing) -> CleanGraph {
    build_cl(ring).induced_subgraph(|_, v| v.idempotent != ring.zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Cl,
    Cl2,
}

impl Variant {
    pub fn build(self, ring: &FiniteRing) -> CleanGraph {
        match self {
            Variant::Cl => build_cl(ring),
            Variant::Cl2 => build_cl2(ring),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Cl => "cl",
            Variant::Cl2 => "cl2",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cl" => Ok(Variant::Cl),
            "cl2" => Ok(Variant::Cl2),
            other => Err(format!("unknown variant `{other}` (expected cl or cl2)")),
        }
    }
}
