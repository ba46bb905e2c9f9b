//! Exact maximum independent set by branch and bound.

use fixedbitset::FixedBitSet;

use crate::graph::Graph;

struct Search<'a, L> {
    g: &'a Graph<L>,
    best: Vec<usize>,
}

impl<L> Search<'_, L> {
    fn degree_in(&self, v: usize, p: &FixedBitSet) -> usize {
        self.g.adjacency(v).intersection(p).count()
    }

    /// Number of cliques in a greedy clique cover of `p`; an upper bound on
    /// the independence number of the subgraph induced by `p`.
    fn clique_cover_bound(&self, p: &FixedBitSet) -> usize {
        let mut left = p.clone();
        let mut cliques = 0;
        while let Some(v) = left.ones().next() {
            left.set(v, false);
            let mut common = left.clone();
            common.intersect_with(self.g.adjacency(v));
            while let Some(w) = common.ones().next() {
                left.set(w, false);
                common.set(w, false);
                common.intersect_with(self.g.adjacency(w));
            }
            cliques += 1;
        }
        cliques
    }

    fn run(&mut self, mut p: FixedBitSet, mut current: Vec<usize>) {
        // Vertices of degree 0 or 1 in the candidate set belong to some
        // maximum independent set.
        loop {
            let low = p.ones().find(|&v| self.degree_in(v, &p) <= 1);
            let Some(v) = low else { break };
            current.push(v);
            p.set(v, false);
            p.difference_with(self.g.adjacency(v));
        }
        if p.is_clear() {
            if current.len() > self.best.len() {
                current.sort_unstable();
                self.best = current;
            }
            return;
        }
        if current.len() + self.clique_cover_bound(&p) <= self.best.len() {
            return;
        }
        let v = p
            .ones()
            .max_by_key(|&v| (self.degree_in(v, &p), std::cmp::Reverse(v)))
            .expect("nonempty");

        let mut with = p.clone();
        with.set(v, false);
        with.difference_with(self.g.adjacency(v));
        let mut inc = current.clone();
        inc.push(v);
        self.run(with, inc);

        p.set(v, false);
        self.run(p, current);
    }
}

/// Exact maximum independent set, solved per connected component. The
/// witness is sorted and depends only on the graph and its vertex order.
pub fn max_independent_set<L>(g: &Graph<L>) -> Vec<usize> {
    let mut out = Vec::new();
    for comp in g.components() {
        let mut p = FixedBitSet::with_capacity(g.order());
        for &v in &comp {
            p.insert(v);
        }
        let mut s = Search {
            g,
            best: Vec::new(),
        };
        s.run(p, Vec::new());
        out.extend(s.best);
    }
    out.sort_unstable();
    out
}

/// Complement of the maximum independent set witness.
pub fn min_vertex_cover<L>(g: &Graph<L>) -> Vec<usize> {
    let mis = max_independent_set(g);
    let mut in_mis = vec![false; g.order()];
    for v in mis {
        in_mis[v] = true;
    }
    (0..g.order()).filter(|&v| !in_mis[v]).collect()
}

pub fn is_independent<L>(g: &Graph<L>, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

pub fn is_vertex_cover<L>(g: &Graph<L>, set: &[usize]) -> bool {
    let mut chosen = vec![false; g.order()];
    for &v in set {
        chosen[v] = true;
    }
    g.edges().into_iter().all(|(u, v)| chosen[u] || chosen[v])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    fn two_k4() -> Graph<usize> {
        let mut g = Graph::new(ids(8));
        for base in [0, 4] {
            for i in 0..4 {
                for j in (i + 1)..4 {
                    g.add_edge(base + i, base + j);
                }
            }
        }
        g
    }

    #[test]
    fn complete_graphs() {
        let k = Graph::complete(ids(5));
        assert_eq!(max_independent_set(&k).len(), 1);
        assert_eq!(min_vertex_cover(&Graph::complete(ids(4))).len(), 3);
    }

    #[test]
    fn two_cliques() {
        let g = two_k4();
        assert_eq!(max_independent_set(&g).len(), 2);
        assert_eq!(min_vertex_cover(&g).len(), 6);
    }

    #[test]
    fn cycle_and_empty() {
        let c5 = Graph::from_edges(ids(5), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let s = max_independent_set(&c5);
        assert_eq!(s.len(), 2);
        assert!(is_independent(&c5, &s));
        assert_eq!(max_independent_set(&Graph::new(ids(3))), vec![0, 1, 2]);
        assert!(max_independent_set(&Graph::<usize>::new(vec![])).is_empty());
    }

    #[test]
    fn petersen() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = Graph::from_edges(ids(10), outer.chain(spokes).chain(inner));
        let s = max_independent_set(&g);
        assert_eq!(s.len(), 4);
        assert!(is_independent(&g, &s));
        assert!(is_vertex_cover(&g, &min_vertex_cover(&g)));
    }

    #[test]
    fn deterministic() {
        let g = two_k4();
        assert_eq!(max_independent_set(&g), max_independent_set(&g));
    }
}
