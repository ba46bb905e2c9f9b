//! Mutually maximally distant (MMD) pairs, boundaries and strong resolving
//! graphs, plus the closed-form MMD predicates and predicted SR-graphs for
//! clean graphs.

use serde::Serialize;
use std::fmt;
use std::hash::Hash;
use thiserror::Error;

use crate::clean::{build_cl, build_cl2, clean_vertices, graph_on, CleanGraph, CleanVertex};
use crate::graph::{
    all_pairs_distances, first_edge_difference, is_disjoint_union_of_cliques, DistanceMatrix,
    Graph, GraphError,
};
use crate::ring::FiniteRing;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SrgError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

#[derive(Debug, Clone)]
pub struct SrgResult<L> {
    pub distances: DistanceMatrix,
    /// Pairs `(u, v)` with `u < v`, as indices into the source graph.
    pub mmd_pairs: Vec<(usize, usize)>,
    /// Sorted indices into the source graph.
    pub boundary: Vec<usize>,
    /// Graph on the boundary (in boundary order) whose edges are the MMD pairs.
    pub srg: Graph<L>,
}

/// True iff no neighbour of `u` is farther from `v` than `u` is.
fn maximally_distant<L>(g: &Graph<L>, d: &DistanceMatrix, u: usize, v: usize) -> bool {
    let duv = d.get(u, v);
    g.neighbors(u).all(|w| d.get(v, w) <= duv)
}

pub fn is_mmd<L>(g: &Graph<L>, d: &DistanceMatrix, u: usize, v: usize) -> bool {
    u != v && maximally_distant(g, d, u, v) && maximally_distant(g, d, v, u)
}

pub fn mmd_pairs<L>(g: &Graph<L>, d: &DistanceMatrix) -> Result<Vec<(usize, usize)>, GraphError> {
    if !d.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let n = g.order();
    Ok((0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| is_mmd(g, d, u, v))
        .collect())
}

pub fn strong_resolving_graph<L: Clone + Sync>(g: &Graph<L>) -> Result<SrgResult<L>, GraphError> {
    let distances = all_pairs_distances(g);
    let pairs = mmd_pairs(g, &distances)?;
    let mut in_boundary = vec![false; g.order()];
    for &(u, v) in &pairs {
        in_boundary[u] = true;
        in_boundary[v] = true;
    }
    let boundary: Vec<usize> = (0..g.order()).filter(|&u| in_boundary[u]).collect();
    let mut position = vec![usize::MAX; g.order()];
    for (i, &u) in boundary.iter().enumerate() {
        position[u] = i;
    }
    let srg = Graph::from_edges(
        boundary.iter().map(|&u| g.label(u).clone()).collect(),
        pairs.iter().map(|&(u, v)| (position[u], position[v])),
    );
    Ok(SrgResult {
        distances,
        mmd_pairs: pairs,
        boundary,
        srg,
    })
}

/// Which closed-form MMD characterization to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MmdTheorem {
    /// Cl(R), R without nontrivial idempotents: e = f = 0 or e = f = 1.
    ClNoIdempotents,
    /// Cl2(R), R with nontrivial idempotents.
    Cl2,
    /// Cl(R), R with nontrivial idempotents: e = f = 0, or e, f != 0 with
    /// ef != 0 and uv != 1.
    ClWithIdempotents,
}

impl MmdTheorem {
    pub fn check_hypotheses(self, ring: &FiniteRing) -> Result<(), SrgError> {
        if ring.units().len() < 2 {
            return Err(SrgError::HypothesisViolated("|U(R)| < 2".into()));
        }
        let has = ring.has_nontrivial_idempotents();
        match self {
            MmdTheorem::ClNoIdempotents if has => Err(SrgError::HypothesisViolated(
                "ring has nontrivial idempotents".into(),
            )),
            MmdTheorem::Cl2 | MmdTheorem::ClWithIdempotents if !has => Err(
                SrgError::HypothesisViolated("ring has no nontrivial idempotents".into()),
            ),
            _ => Ok(()),
        }
    }

    /// The theorem that applies to `ring` for the given graph, if any.
    pub fn applicable(ring: &FiniteRing, cl2: bool) -> Option<MmdTheorem> {
        let t = match (cl2, ring.has_nontrivial_idempotents()) {
            (false, false) => MmdTheorem::ClNoIdempotents,
            (false, true) => MmdTheorem::ClWithIdempotents,
            (true, true) => MmdTheorem::Cl2,
            (true, false) => return None,
        };
        t.check_hypotheses(ring).ok().map(|_| t)
    }
}

fn is_non_involutory(ring: &FiniteRing, u: crate::ring::RingElement) -> bool {
    ring.is_unit(u) && ring.mul(u, u) != ring.one()
}

/// Cl2 adjacency rule shared by the MMD predicate and the graph H'.
fn cl2_rule(ring: &FiniteRing, a: CleanVertex, b: CleanVertex) -> bool {
    let (one, zero) = (ring.one(), ring.zero());
    let (e, f) = (a.idempotent, b.idempotent);
    let uv_not_one = ring.mul(a.unit, b.unit) != one;
    if e == one && f == one {
        uv_not_one
    } else if e != one && f != one {
        ring.mul(e, f) != zero && uv_not_one
    } else {
        a.unit == b.unit && is_non_involutory(ring, a.unit)
    }
}

fn ef_nonzero_uv_not_one(ring: &FiniteRing, a: CleanVertex, b: CleanVertex) -> bool {
    ring.mul(a.idempotent, b.idempotent) != ring.zero() && ring.mul(a.unit, b.unit) != ring.one()
}

/// Evaluates the closed-form predicate on the algebra of the pair alone.
pub fn predicted_mmd(
    ring: &FiniteRing,
    theorem: MmdTheorem,
    a: CleanVertex,
    b: CleanVertex,
) -> Result<bool, SrgError> {
    theorem.check_hypotheses(ring)?;
    if a == b {
        return Ok(false);
    }
    let zero = ring.zero();
    Ok(match theorem {
        MmdTheorem::ClNoIdempotents => a.idempotent == b.idempotent,
        MmdTheorem::Cl2 => {
            if a.idempotent == zero || b.idempotent == zero {
                return Err(SrgError::HypothesisViolated(
                    "vertex with e = 0 is not in Cl2(R)".into(),
                ));
            }
            cl2_rule(ring, a, b)
        }
        MmdTheorem::ClWithIdempotents => {
            let (e, f) = (a.idempotent, b.idempotent);
            (e == zero && f == zero)
                || (e != zero && f != zero && ef_nonzero_uv_not_one(ring, a, b))
        }
    })
}

fn require_idempotents(ring: &FiniteRing) -> Result<(), SrgError> {
    if ring.has_nontrivial_idempotents() {
        Ok(())
    } else {
        Err(SrgError::HypothesisViolated(
            "ring has no nontrivial idempotents".into(),
        ))
    }
}

/// K: e nontrivial idempotent; adjacent iff ef != 0 and uv != 1.
pub fn build_graph_k(ring: &FiniteRing) -> Result<CleanGraph, SrgError> {
    require_idempotents(ring)?;
    let (zero, one) = (ring.zero(), ring.one());
    let vs = clean_vertices(ring)
        .into_iter()
        .filter(|v| v.idempotent != zero && v.idempotent != one)
        .collect();
    Ok(graph_on(vs, |a, b| ef_nonzero_uv_not_one(ring, a, b)))
}

/// H': vertices of Cl2(R), adjacency by the three-case rule.
pub fn build_graph_hprime(ring: &FiniteRing) -> Result<CleanGraph, SrgError> {
    require_idempotents(ring)?;
    let zero = ring.zero();
    let vs = clean_vertices(ring)
        .into_iter()
        .filter(|v| v.idempotent != zero)
        .collect();
    Ok(graph_on(vs, |a, b| cl2_rule(ring, a, b)))
}

/// G: e != 0; adjacent iff ef != 0 and uv != 1.
pub fn build_graph_g(ring: &FiniteRing) -> Result<CleanGraph, SrgError> {
    require_idempotents(ring)?;
    let zero = ring.zero();
    let vs = clean_vertices(ring)
        .into_iter()
        .filter(|v| v.idempotent != zero)
        .collect();
    Ok(graph_on(vs, |a, b| ef_nonzero_uv_not_one(ring, a, b)))
}

/// Disjoint union of two clean graphs over disjoint vertex sets, re-sorted
/// into lexicographic vertex order.
pub fn disjoint_union(a: &CleanGraph, b: &CleanGraph) -> CleanGraph {
    let mut labels: Vec<CleanVertex> = a.labels().iter().chain(b.labels()).copied().collect();
    labels.sort_unstable();
    let pos = |v: &CleanVertex| labels.binary_search(v).expect("label present");
    let edges: Vec<(usize, usize)> = a
        .edges()
        .into_iter()
        .map(|(u, v)| (pos(a.label(u)), pos(a.label(v))))
        .chain(
            b.edges()
                .into_iter()
                .map(|(u, v)| (pos(b.label(u)), pos(b.label(v)))),
        )
        .collect();
    Graph::from_edges(labels.clone(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClaim {
    /// Cl(R) or Cl2(R) complete: the SR-graph is the graph itself.
    Complete,
    /// No nontrivial idempotents, Cl(R) not complete: Cl(R)_SR = 2K_|U|.
    ClTwoCliques,
    /// Nontrivial idempotents, Cl(R) not complete: Cl(R)_SR = G + K_|U|.
    ClGPlusClique,
    /// U'' empty, Cl2(R) not complete: Cl2(R)_SR = K_|U| + K.
    Cl2CliquePlusK,
    /// U'' nonempty, Cl2(R) not complete: Cl2(R)_SR = H'.
    Cl2HPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum StructureOutcome {
    Match {
        claim: StructureClaim,
    },
    Mismatch {
        claim: StructureClaim,
        witness: String,
    },
    Skipped {
        reason: String,
    },
}

impl StructureOutcome {
    pub fn is_match(&self) -> bool {
        matches!(self, StructureOutcome::Match { .. })
    }
}

impl fmt::Display for StructureOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureOutcome::Match { claim } => write!(f, "MATCH ({claim:?})"),
            StructureOutcome::Mismatch { claim, witness } => {
                write!(f, "MISMATCH ({claim:?}): {witness}")
            }
            StructureOutcome::Skipped { reason } => write!(f, "SKIPPED: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub cl: StructureOutcome,
    pub cl2: StructureOutcome,
    /// V(SR) = V for each graph where the SR-graph was computed.
    pub cl_full_boundary: Option<bool>,
    pub cl2_full_boundary: Option<bool>,
    /// Connectivity of G where the G + K_|U| claim applies.
    pub g_connected: Option<bool>,
}

fn compare<L: Clone + Eq + Hash + fmt::Debug>(
    claim: StructureClaim,
    computed: &Graph<L>,
    predicted: &Graph<L>,
    render: impl Fn(&L) -> String,
) -> StructureOutcome {
    match first_edge_difference(computed, predicted) {
        Ok(None) => StructureOutcome::Match { claim },
        Ok(Some(d)) => StructureOutcome::Mismatch {
            claim,
            witness: format!(
                "edge {}-{} {} computed SR-graph but {} predicted graph",
                render(&d.a),
                render(&d.b),
                if d.in_first { "in" } else { "absent from" },
                if d.in_first { "absent from" } else { "in" },
            ),
        },
        Err(_) => StructureOutcome::Mismatch {
            claim,
            witness: format!(
                "vertex sets differ: computed {} vertices, predicted {}",
                computed.order(),
                predicted.order()
            ),
        },
    }
}

fn complete_check(graph: &CleanGraph, srg: &CleanGraph) -> StructureOutcome {
    if srg.order() == graph.order() && srg.is_complete() {
        StructureOutcome::Match {
            claim: StructureClaim::Complete,
        }
    } else {
        StructureOutcome::Mismatch {
            claim: StructureClaim::Complete,
            witness: format!(
                "SR-graph has {} vertices and {} edges; expected K_{}",
                srg.order(),
                srg.edge_count(),
                graph.order()
            ),
        }
    }
}

/// Computes both SR-graphs from scratch and compares them with the
/// structure the ring's inventory selects.
pub fn verify_srg_structure(ring: &FiniteRing) -> StructureReport {
    let render = |v: &CleanVertex| v.render(ring);
    let units = ring.units().len();
    let has_idem = ring.has_nontrivial_idempotents();
    let u2_empty = ring.classify_units().non_involutory.is_empty();

    let cl = build_cl(ring);
    let cl_sr = strong_resolving_graph(&cl).expect("Cl(R) is connected");
    let cl_full_boundary = Some(cl_sr.boundary.len() == cl.order());
    let mut g_connected = None;
    let cl_outcome = if cl.is_complete() {
        complete_check(&cl, &cl_sr.srg)
    } else if !has_idem {
        let claim = StructureClaim::ClTwoCliques;
        if cl_sr.srg.order() == cl.order()
            && is_disjoint_union_of_cliques(&cl_sr.srg, &[units, units])
        {
            StructureOutcome::Match { claim }
        } else {
            StructureOutcome::Mismatch {
                claim,
                witness: format!(
                    "component sizes {:?}, expected two cliques of size {units}",
                    cl_sr
                        .srg
                        .components()
                        .iter()
                        .map(Vec::len)
                        .collect::<Vec<_>>()
                ),
            }
        }
    } else {
        let g = build_graph_g(ring).expect("idempotents present");
        g_connected = Some(g.is_connected());
        let s = graph_on(
            clean_vertices(ring)
                .into_iter()
                .filter(|v| v.idempotent == ring.zero())
                .collect(),
            |_, _| true,
        );
        compare(
            StructureClaim::ClGPlusClique,
            &cl_sr.srg,
            &disjoint_union(&g, &s),
            render,
        )
    };

    let cl2 = build_cl2(ring);
    let cl2_sr = if has_idem {
        strong_resolving_graph(&cl2).map_err(|e| e.to_string())
    } else {
        Err("ring has no nontrivial idempotents".to_string())
    };
    let (cl2_outcome, cl2_full_boundary) = match cl2_sr {
        Err(reason) => (StructureOutcome::Skipped { reason }, None),
        Ok(sr) => {
            let full = Some(sr.boundary.len() == cl2.order());
            let outcome = if cl2.is_complete() {
                complete_check(&cl2, &sr.srg)
            } else if u2_empty {
                let k = build_graph_k(ring).expect("idempotents present");
                let h = graph_on(
                    clean_vertices(ring)
                        .into_iter()
                        .filter(|v| v.idempotent == ring.one())
                        .collect(),
                    |_, _| true,
                );
                compare(
                    StructureClaim::Cl2CliquePlusK,
                    &sr.srg,
                    &disjoint_union(&h, &k),
                    render,
                )
            } else {
                let hp = build_graph_hprime(ring).expect("idempotents present");
                compare(StructureClaim::Cl2HPrime, &sr.srg, &hp, render)
            };
            (outcome, full)
        }
    };

    StructureReport {
        cl: cl_outcome,
        cl2: cl2_outcome,
        cl_full_boundary,
        cl2_full_boundary,
        g_connected,
    }
}
