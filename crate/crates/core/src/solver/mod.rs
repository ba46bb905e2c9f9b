//! Independence number, vertex cover number and strong metric dimension.

mod mis;
mod oracle;

pub use mis::{is_independent, is_vertex_cover, max_independent_set, min_vertex_cover};
pub use oracle::{
    is_strong_resolving_set, sdim_bruteforce, strongly_resolves, DEFAULT_ORACLE_BOUND,
    MAX_ORACLE_BOUND,
};

use serde::Serialize;

use crate::graph::{Graph, GraphError};
use crate::srg::strong_resolving_graph;

/// Witness vertices are indices into the input graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub vertices: usize,
    pub srg_vertices: usize,
    pub srg_edges: usize,
    /// Vertex cover number of the SR-graph.
    pub alpha_srg: usize,
    /// Independence number of the SR-graph.
    pub beta_srg: usize,
    pub sdim: usize,
    pub independent_set: Vec<usize>,
    pub vertex_cover: Vec<usize>,
    pub oracle_ran: bool,
    pub resolving_set: Option<Vec<usize>>,
}

impl DimensionReport {
    pub fn oracle_size(&self) -> Option<usize> {
        self.resolving_set.as_ref().map(Vec::len)
    }

    /// Oracle size when the oracle ran, otherwise the vertex cover number.
    pub fn ground_truth(&self) -> usize {
        self.oracle_size().unwrap_or(self.alpha_srg)
    }
}

/// sdim as the vertex cover number of the strong resolving graph.
pub fn sdim_via_srg<L: Clone + Sync>(g: &Graph<L>) -> Result<DimensionReport, GraphError> {
    let sr = strong_resolving_graph(g)?;
    let to_source = |s: Vec<usize>| s.into_iter().map(|i| sr.boundary[i]).collect::<Vec<_>>();
    let mis = max_independent_set(&sr.srg);
    let cover = min_vertex_cover(&sr.srg);
    Ok(DimensionReport {
        vertices: g.order(),
        srg_vertices: sr.srg.order(),
        srg_edges: sr.srg.edge_count(),
        alpha_srg: cover.len(),
        beta_srg: mis.len(),
        sdim: cover.len(),
        independent_set: to_source(mis),
        vertex_cover: to_source(cover),
        oracle_ran: false,
        resolving_set: None,
    })
}

/// As [`sdim_via_srg`], additionally running the brute-force oracle when the
/// graph has at most `oracle_bound` vertices.
pub fn sdim_with_oracle<L: Clone + Sync>(
    g: &Graph<L>,
    oracle_bound: usize,
) -> Result<DimensionReport, GraphError> {
    let mut report = sdim_via_srg(g)?;
    match sdim_bruteforce(g, oracle_bound) {
        Ok(set) => {
            report.oracle_ran = true;
            report.resolving_set = Some(set);
        }
        Err(GraphError::TooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clean::{build_cl, build_cl2};
    use crate::graph::all_pairs_distances;
    use crate::ring::build_ring;

    fn cl(s: &str) -> Graph<crate::clean::CleanVertex> {
        build_cl(&build_ring(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn small_clean_graphs() {
        assert_eq!(sdim_via_srg(&cl("Z2")).unwrap().sdim, 1);
        assert_eq!(sdim_via_srg(&cl("Z7")).unwrap().sdim, 10);
        assert_eq!(sdim_via_srg(&cl("Z2 x Z2")).unwrap().sdim, 3);
        assert_eq!(sdim_via_srg(&cl("Z5")).unwrap().alpha_srg, 6);
    }

    #[test]
    fn oracle_agrees_on_small_rings() {
        for s in ["Z3", "Z2 x Z3", "Z4", "Z5"] {
            let g = cl(s);
            let r = sdim_with_oracle(&g, DEFAULT_ORACLE_BOUND).unwrap();
            assert!(r.oracle_ran, "{s}");
            assert_eq!(r.oracle_size(), Some(r.sdim), "{s}");
            let d = all_pairs_distances(&g);
            assert!(is_strong_resolving_set(
                &d,
                r.resolving_set.as_ref().unwrap()
            ));
        }
        assert_eq!(sdim_with_oracle(&cl("Z3"), 18).unwrap().sdim, 2);
    }

    #[test]
    fn z2xz3_values() {
        let r = build_ring(&"Z2 x Z3".parse().unwrap()).unwrap();
        let rep = sdim_with_oracle(&build_cl(&r), 18).unwrap();
        assert_eq!(rep.oracle_size(), Some(4));
        assert_eq!(sdim_via_srg(&build_cl2(&r)).unwrap().beta_srg, 3);
    }

    #[test]
    fn oracle_skipped_above_bound() {
        let rep = sdim_with_oracle(&cl("Z7"), 4).unwrap();
        assert!(!rep.oracle_ran);
        assert_eq!(rep.ground_truth(), rep.alpha_srg);
    }
}
