//! Finite simple undirected graphs with bitset adjacency, plus the distance
//! and shape queries used to compare computed graphs with predicted ones.

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex label sets differ")]
    LabelMismatch,
    #[error("graph has {vertices} vertices, above the bound of {bound}")]
    TooLarge { vertices: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph<L> {
    labels: Vec<L>,
    adj: Vec<FixedBitSet>,
}

impl<L> Graph<L> {
    /// Edgeless graph on the given vertices.
    pub fn new(labels: Vec<L>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn complete(labels: Vec<L>) -> Self {
        let mut g = Graph::new(labels);
        for u in 0..g.order() {
            for v in (u + 1)..g.order() {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(labels: Vec<L>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::new(labels);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-loops are not allowed");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].ones()
    }

    pub fn adjacency(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> &L {
        &self.labels[u]
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| {
                self.adj[u]
                    .ones()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| self.degree(u) == n - 1)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = FixedBitSet::with_capacity(n);
        let mut out = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].ones() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn map_labels<M>(&self, f: impl Fn(&L) -> M) -> Graph<M> {
        Graph {
            labels: self.labels.iter().map(f).collect(),
            adj: self.adj.clone(),
        }
    }
}

impl<L: Clone> Graph<L> {
    /// Subgraph induced by the vertices satisfying `keep`, in original order.
    pub fn induced_subgraph(&self, keep: impl Fn(usize, &L) -> bool) -> Graph<L> {
        let kept: Vec<usize> = (0..self.order())
            .filter(|&u| keep(u, &self.labels[u]))
            .collect();
        self.induced_on(&kept)
    }

    /// Subgraph induced by `vertices`, in the given order.
    pub fn induced_on(&self, vertices: &[usize]) -> Graph<L> {
        let labels = vertices.iter().map(|&u| self.labels[u].clone()).collect();
        let mut g = Graph::new(labels);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

impl<L: Eq + Hash> Graph<L> {
    pub fn index_of(&self, label: &L) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Hop distances between all vertex pairs. Unreachable pairs are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<Option<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => write!(f, "infinite"),
        }
    }
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.dist[u * self.n + v].map(|d| d as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    /// Largest distance from `u`, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self, u: usize) -> Option<usize> {
        (0..self.n)
            .map(|v| self.get(u, v))
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    pub fn diameter(&self) -> Diameter {
        if !self.is_connected() {
            return Diameter::Infinite;
        }
        Diameter::Finite(self.dist.iter().flatten().copied().max().unwrap_or(0) as usize)
    }
}

fn bfs<L>(g: &Graph<L>, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in g.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

const PARALLEL_BFS_THRESHOLD: usize = 256;

/// BFS from every vertex. Sources run in parallel on large graphs.
pub fn all_pairs_distances<L: Sync>(g: &Graph<L>) -> DistanceMatrix {
    let n = g.order();
    let rows: Vec<Vec<Option<u32>>> = if n >= PARALLEL_BFS_THRESHOLD {
        (0..n).into_par_iter().map(|s| bfs(g, s)).collect()
    } else {
        (0..n).map(|s| bfs(g, s)).collect()
    };
    DistanceMatrix {
        n,
        dist: rows.into_iter().flatten().collect(),
    }
}

pub fn diameter<L: Sync>(g: &Graph<L>) -> Diameter {
    all_pairs_distances(g).diameter()
}

/// True iff the connected components of `g` are cliques whose sizes form
/// exactly the multiset `sizes`.
pub fn is_disjoint_union_of_cliques<L>(g: &Graph<L>, sizes: &[usize]) -> bool {
    let comps = g.components();
    let all_cliques = comps
        .iter()
        .all(|c| c.iter().all(|&u| g.degree(u) == c.len() - 1));
    let mut found: Vec<usize> = comps.iter().map(Vec::len).collect();
    let mut wanted = sizes.to_vec();
    found.sort_unstable();
    wanted.sort_unstable();
    all_cliques && found == wanted
}

/// A vertex pair adjacent in exactly one of two label-matched graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDifference<L> {
    pub a: L,
    pub b: L,
    pub in_first: bool,
}

impl<L: fmt::Display> fmt::Display for EdgeDifference<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (yes, no) = if self.in_first {
            ("first", "second")
        } else {
            ("second", "first")
        };
        write!(
            f,
            "edge {}-{} present in {yes} graph only, not in {no}",
            self.a, self.b
        )
    }
}

/// First edge (in the first graph's vertex order) on which two graphs over
/// the same label set disagree.
pub fn first_edge_difference<L: Clone + Eq + Hash>(
    g1: &Graph<L>,
    g2: &Graph<L>,
) -> Result<Option<EdgeDifference<L>>, GraphError> {
    if g1.order() != g2.order() {
        return Err(GraphError::LabelMismatch);
    }
    let pos2: HashMap<&L, usize> = g2.labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
    if pos2.len() != g2.order() {
        return Err(GraphError::LabelMismatch);
    }
    let map: Vec<usize> = g1
        .labels
        .iter()
        .map(|l| pos2.get(l).copied().ok_or(GraphError::LabelMismatch))
        .collect::<Result<_, _>>()?;
    for u in 0..g1.order() {
        for v in (u + 1)..g1.order() {
            let e1 = g1.has_edge(u, v);
            if e1 != g2.has_edge(map[u], map[v]) {
                return Ok(Some(EdgeDifference {
                    a: g1.labels[u].clone(),
                    b: g1.labels[v].clone(),
                    in_first: e1,
                }));
            }
        }
    }
    Ok(None)
}

/// Label-for-label equality; no isomorphism search.
pub fn same_labeled_graph<L: Clone + Eq + Hash>(
    g1: &Graph<L>,
    g2: &Graph<L>,
) -> Result<bool, GraphError> {
    first_edge_difference(g1, g2).map(|d| d.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    fn path3() -> Graph<usize> {
        Graph::from_edges(ids(3), [(0, 1), (1, 2)])
    }

    #[test]
    fn complete_graph_distances() {
        let k4 = Graph::complete(ids(4));
        let d = all_pairs_distances(&k4);
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(d.get(u, v), Some(usize::from(u != v)));
            }
        }
        assert_eq!(d.diameter(), Diameter::Finite(1));
    }

    #[test]
    fn path_distances() {
        let d = all_pairs_distances(&path3());
        assert_eq!(d.get(0, 2), Some(2));
        assert_eq!(d.diameter(), Diameter::Finite(2));
        assert_eq!(d.eccentricity(1), Some(1));
    }

    #[test]
    fn disconnected_diameter() {
        let g = Graph::from_edges(ids(3), [(0, 1)]);
        let d = all_pairs_distances(&g);
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.diameter(), Diameter::Infinite);
        assert_eq!(d.eccentricity(0), None);
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn clique_union_shapes() {
        let two_k3 = Graph::from_edges(ids(6), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
        assert!(is_disjoint_union_of_cliques(&two_k3, &[3, 3]));
        assert!(!is_disjoint_union_of_cliques(&two_k3, &[6]));
        assert!(!is_disjoint_union_of_cliques(&path3(), &[3]));
        assert!(is_disjoint_union_of_cliques(&Graph::new(ids(2)), &[1, 1]));
    }

    #[test]
    fn induced_subgraphs() {
        let k4 = Graph::complete(ids(4));
        let k2 = k4.induced_subgraph(|u, _| u < 2);
        assert_eq!(k2.order(), 2);
        assert!(k2.is_complete());
        assert_eq!(k4.induced_subgraph(|_, _| true), k4);
    }

    #[test]
    fn labeled_comparison() {
        let k2 = Graph::complete(vec!['a', 'b']);
        let empty = Graph::new(vec!['b', 'a']);
        assert!(same_labeled_graph(&k2, &k2).unwrap());
        assert!(!same_labeled_graph(&k2, &empty).unwrap());
        let diff = first_edge_difference(&k2, &empty).unwrap().unwrap();
        assert_eq!((diff.a, diff.b, diff.in_first), ('a', 'b', true));
        let other = Graph::new(vec!['a', 'c']);
        assert_eq!(
            same_labeled_graph(&k2, &other),
            Err(GraphError::LabelMismatch)
        );
        // same labels, different order, same edges
        let k2_rev = Graph::complete(vec!['b', 'a']);
        assert!(same_labeled_graph(&k2, &k2_rev).unwrap());
    }

    #[test]
    fn edges_and_degrees() {
        let g = path3();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    #[should_panic]
    fn self_loops_panic() {
        Graph::new(ids(2)).add_edge(1, 1);
    }
}
