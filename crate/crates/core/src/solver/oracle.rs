//! Definitional strong metric dimension: minimum strong resolving set via
//! exact set cover over vertex pairs.

use crate::graph::{all_pairs_distances, DistanceMatrix, Graph, GraphError};

pub const DEFAULT_ORACLE_BOUND: usize = 18;
/// Candidate sets are `u64` masks.
pub const MAX_ORACLE_BOUND: usize = 64;

/// `w` strongly resolves `u, v` iff `v` lies on a shortest `u`-`w` path or
/// `u` lies on a shortest `v`-`w` path.
pub fn strongly_resolves(w: usize, u: usize, v: usize, d: &DistanceMatrix) -> bool {
    let on_path = |a: usize, b: usize| match (d.get(a, w), d.get(a, b), d.get(b, w)) {
        (Some(aw), Some(ab), Some(bw)) => aw == ab + bw,
        _ => false,
    };
    on_path(u, v) || on_path(v, u)
}

pub fn is_strong_resolving_set(d: &DistanceMatrix, set: &[usize]) -> bool {
    let n = d.order();
    (0..n).all(|u| ((u + 1)..n).all(|v| set.iter().any(|&w| strongly_resolves(w, u, v, d))))
}

struct Cover {
    /// Resolver mask per vertex pair.
    pairs: Vec<u64>,
    best: u64,
}

impl Cover {
    /// Disjoint-candidate packing of uncovered pairs: each needs its own
    /// resolver.
    fn lower_bound(&self, uncovered: &[usize], allowed: u64) -> u32 {
        let mut used = 0u64;
        let mut count = 0;
        for &i in uncovered {
            let c = self.pairs[i] & allowed;
            if c & used == 0 {
                used |= c;
                count += 1;
            }
        }
        count
    }

    fn run(&mut self, chosen: u64, allowed: u64) {
        let uncovered: Vec<usize> = (0..self.pairs.len())
            .filter(|&i| self.pairs[i] & chosen == 0)
            .collect();
        if uncovered.is_empty() {
            if chosen.count_ones() < self.best.count_ones() {
                self.best = chosen;
            }
            return;
        }
        if chosen.count_ones() + self.lower_bound(&uncovered, allowed) >= self.best.count_ones() {
            return;
        }
        let pick = uncovered
            .iter()
            .copied()
            .min_by_key(|&i| ((self.pairs[i] & allowed).count_ones(), i))
            .expect("nonempty");
        let mut cands = self.pairs[pick] & allowed;
        let mut allowed = allowed;
        while cands != 0 {
            let c = cands.trailing_zeros();
            cands &= cands - 1;
            self.run(chosen | 1 << c, allowed);
            allowed &= !(1 << c);
        }
    }
}

/// Exact minimum strong resolving set of a connected graph with at most
/// `max_vertices` vertices (capped at 64). Returns the sorted witness.
pub fn sdim_bruteforce<L: Sync>(
    g: &Graph<L>,
    max_vertices: usize,
) -> Result<Vec<usize>, GraphError> {
    let n = g.order();
    let bound = max_vertices.min(MAX_ORACLE_BOUND);
    if n > bound {
        return Err(GraphError::TooLarge { vertices: n, bound });
    }
    let d = all_pairs_distances(g);
    if !d.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let mask = (0..n)
                .filter(|&w| strongly_resolves(w, u, v, &d))
                .fold(0u64, |m, w| m | 1 << w);
            pairs.push(mask);
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // Any n - 1 vertices resolve every pair: each pair keeps an endpoint.
    let initial = if n == 0 { 0 } else { all >> 1 };
    let mut cover = Cover {
        pairs,
        best: initial,
    };
    cover.run(0, all);
    Ok((0..n).filter(|&v| cover.best >> v & 1 == 1).collect())
}
