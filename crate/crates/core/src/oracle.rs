//! Brute-force reference answers, independent of the search and index code.
//!
//! Everything here is derived from threshold connectivity: hyperedges `a` and
//! `b` are joined at level `s` when `OD(a, b) >= s`. Inserting hyperedge
//! pairs in descending overlap order into one union-find, never resetting it,
//! answers every threshold from `δ` down to 1 in a single sweep. A walk of a
//! single hyperedge `e` counts only up to `|e|`; any longer walk with WOD `s`
//! only visits hyperedges of size at least `s`.

use crate::error::ArgError;
use crate::hypergraph::{Hypergraph, NeighborScratch};
use crate::order::HyperedgeOrder;
use crate::union_find::DisjointSet;
use crate::{HyperedgeId, VertexId};

/// All hyperedge pairs `a < b` with a positive overlap, by descending overlap.
fn overlapping_pairs(h: &Hypergraph) -> Vec<(u32, HyperedgeId, HyperedgeId)> {
    let mut scratch = NeighborScratch::new(h.num_hyperedges());
    let mut buf = Vec::new();
    let mut pairs = Vec::new();
    for a in h.hyperedges() {
        buf.clear();
        scratch.collect(h, a, &mut buf);
        pairs.extend(buf.iter().filter(|&&(b, _)| b > a).map(|&(b, od)| (od, a, b)));
    }
    pairs.sort_unstable_by_key(|&(od, _, _)| std::cmp::Reverse(od));
    pairs
}

/// Calls `check(s, uf)` for `s = δ, δ-1, …, 1` after every pair with overlap
/// `>= s` has been merged; stops at the first `s` for which it returns true.
fn sweep<F>(h: &Hypergraph, mut check: F) -> u32
where
    F: FnMut(u32, &mut DisjointSet) -> bool,
{
    let pairs = overlapping_pairs(h);
    let mut uf = DisjointSet::new(h.num_hyperedges());
    let mut next = 0;
    for s in (1..=h.max_edge_size()).rev() {
        while next < pairs.len() && pairs[next].0 >= s {
            uf.union(pairs[next].1, pairs[next].2);
            next += 1;
        }
        if check(s, &mut uf) {
            return s;
        }
    }
    0
}

/// Max-reachability `MR(u, v)` by threshold sweep.
pub fn mr_oracle(h: &Hypergraph, u: VertexId, v: VertexId) -> Result<u32, ArgError> {
    h.check_vertex(u)?;
    h.check_vertex(v)?;
    Ok(sweep(h, |s, uf| {
        h.incident(u).iter().any(|&a| {
            h.edge_size(a) >= s
                && h
                    .incident(v)
                    .iter()
                    .any(|&b| h.edge_size(b) >= s && uf.same(a, b))
        })
    }))
}

/// Largest `s` with `u ⇝ˢ e`.
pub fn vte_oracle(h: &Hypergraph, u: VertexId, e: HyperedgeId) -> Result<u32, ArgError> {
    h.check_vertex(u)?;
    h.check_hyperedge(e)?;
    Ok(sweep(h, |s, uf| {
        h.edge_size(e) >= s
            && h
                .incident(u)
                .iter()
                .any(|&a| h.edge_size(a) >= s && uf.same(a, e))
    }))
}

pub fn s_reach_oracle(h: &Hypergraph, u: VertexId, v: VertexId, s: u32) -> Result<bool, ArgError> {
    if s < 1 {
        return Err(ArgError::ZeroThreshold);
    }
    Ok(mr_oracle(h, u, v)? >= s)
}

/// Maximum cover degree of `e` under `order`: the best WOD of a walk from a
/// strictly more important hyperedge to `e`.
pub fn mcd_bruteforce(h: &Hypergraph, order: &HyperedgeOrder, e: HyperedgeId) -> Result<u32, ArgError> {
    h.check_hyperedge(e)?;
    let better: Vec<HyperedgeId> = h.hyperedges().filter(|&w| order.rank(w) < order.rank(e)).collect();
    if better.is_empty() {
        return Ok(0);
    }
    Ok(sweep(h, |_, uf| better.iter().any(|&w| uf.same(w, e))))
}

/// Dense tables of every hyperedge-to-hyperedge, vertex-to-hyperedge and
/// vertex-to-vertex maximum reach. Quadratic memory; small graphs only.
#[derive(Debug, Clone)]
pub struct OracleTables {
    n: usize,
    m: usize,
    ete: Vec<u32>,
    vte: Vec<u32>,
    mr: Vec<u32>,
}

impl OracleTables {
    pub fn compute(h: &Hypergraph) -> Self {
        let n = h.num_vertices();
        let m = h.num_hyperedges();
        let mut ete = vec![0u32; m * m];
        for e in h.hyperedges() {
            ete[e as usize * m + e as usize] = h.edge_size(e);
        }
        let pairs = overlapping_pairs(h);
        let mut uf = DisjointSet::new(m);
        let mut next = 0;
        let mut groups: std::collections::HashMap<u32, Vec<u32>> = Default::default();
        for s in (1..=h.max_edge_size()).rev() {
            let mut merged = false;
            while next < pairs.len() && pairs[next].0 >= s {
                merged |= uf.union(pairs[next].1, pairs[next].2);
                next += 1;
            }
            if !merged {
                continue;
            }
            groups.clear();
            for e in 0..m as u32 {
                let root = uf.find(e);
                groups.entry(root).or_default().push(e);
            }
            for members in groups.values() {
                for &a in members {
                    for &b in members {
                        let slot = &mut ete[a as usize * m + b as usize];
                        if a != b && *slot == 0 {
                            *slot = s;
                        }
                    }
                }
            }
        }

        let mut vte = vec![0u32; n * m];
        for u in h.vertices() {
            for &a in h.incident(u) {
                for e in 0..m {
                    let cell = &mut vte[u as usize * m + e];
                    *cell = (*cell).max(ete[a as usize * m + e]);
                }
            }
        }
        let mut mr = vec![0u32; n * n];
        for u in 0..n {
            for v in h.vertices() {
                mr[u * n + v as usize] = h
                    .incident(v)
                    .iter()
                    .map(|&b| vte[u * m + b as usize])
                    .max()
                    .unwrap_or(0);
            }
        }
        Self { n, m, ete, vte, mr }
    }

    pub fn mr(&self, u: VertexId, v: VertexId) -> u32 {
        self.mr[u as usize * self.n + v as usize]
    }

    pub fn vte(&self, u: VertexId, e: HyperedgeId) -> u32 {
        self.vte[u as usize * self.m + e as usize]
    }

    /// Best WOD over walks from `a` to `b`; `|a|` when `a == b`.
    pub fn ete(&self, a: HyperedgeId, b: HyperedgeId) -> u32 {
        self.ete[a as usize * self.m + b as usize]
    }

    pub fn mcd(&self, order: &HyperedgeOrder, e: HyperedgeId) -> u32 {
        order.sequence()[..order.rank(e) as usize]
            .iter()
            .map(|&w| self.ete(w, e))
            .max()
            .unwrap_or(0)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{self, edge, vertex};
    use crate::hypergraph::parse_str;
    use proptest::prelude::*;

    #[test]
    fn fixture_pairs() {
        let h = fixture::hypergraph();
        assert_eq!(mr_oracle(&h, vertex(6), vertex(9)).unwrap(), 2);
        assert_eq!(mr_oracle(&h, vertex(5), vertex(9)).unwrap(), 2);
        assert_eq!(mr_oracle(&h, vertex(1), vertex(12)).unwrap(), 2);
        assert!(s_reach_oracle(&h, vertex(1), vertex(10), 2).unwrap());
        assert!(!s_reach_oracle(&h, vertex(5), vertex(9), 3).unwrap());
        assert!(s_reach_oracle(&h, vertex(2), vertex(2), 1).unwrap());
        assert_eq!(s_reach_oracle(&h, 0, 1, 0), Err(ArgError::ZeroThreshold));
    }

    #[test]
    fn fixture_vertex_to_hyperedge() {
        let h = fixture::hypergraph();
        assert_eq!(vte_oracle(&h, vertex(9), edge(2)).unwrap(), 2);
        assert_eq!(vte_oracle(&h, vertex(1), edge(2)).unwrap(), 2);
        // v10 reaches e2 through e5 with overlap 2
        assert_eq!(vte_oracle(&h, vertex(10), edge(2)).unwrap(), 2);
        assert!(vte_oracle(&h, vertex(3), edge(2)).unwrap() >= 6);
    }

    #[test]
    fn disconnected_and_self() {
        let h = parse_str("1 2\n3 4 5 6\n").unwrap();
        assert_eq!(mr_oracle(&h, 0, 2).unwrap(), 0);
        assert_eq!(mr_oracle(&h, 2, 2).unwrap(), 4);
        assert!(mr_oracle(&h, 0, 9).is_err());
        assert!(vte_oracle(&h, 0, 5).is_err());
    }

    #[test]
    fn mcd_of_most_important_is_zero() {
        let h = fixture::hypergraph();
        let order = HyperedgeOrder::compute(&h);
        assert_eq!(mcd_bruteforce(&h, &order, order.at_rank(0)).unwrap(), 0);
    }

    #[test]
    fn mcd_on_sub_hypergraph_example() {
        // e1, e2, e4, e7 of the fixture, ordered e2 < e4 < e7 < e1
        let h = parse_str("1 2\n3 4 5 6 7 8\n3 4 11 12\n1 3 4\n").unwrap();
        let order = HyperedgeOrder::from_sequence(vec![1, 2, 3, 0]);
        assert_eq!(mcd_bruteforce(&h, &order, 2).unwrap(), 2);
        assert_eq!(mcd_bruteforce(&h, &order, 3).unwrap(), 2);
        assert_eq!(mcd_bruteforce(&h, &order, 0).unwrap(), 1);
    }

    fn small_graph() -> impl Strategy<Value = Hypergraph> {
        prop::collection::vec(prop::collection::vec(0u64..14, 1..6), 1..14)
            .prop_map(|edges| Hypergraph::from_token_lists(edges).unwrap())
    }

    proptest! {
        #[test]
        fn tables_agree_with_single_queries(h in small_graph()) {
            let t = OracleTables::compute(&h);
            let order = HyperedgeOrder::compute(&h);
            for u in h.vertices() {
                for v in h.vertices() {
                    prop_assert_eq!(t.mr(u, v), mr_oracle(&h, u, v).unwrap());
                    prop_assert_eq!(t.mr(u, v), t.mr(v, u));
                }
                for e in h.hyperedges() {
                    prop_assert_eq!(t.vte(u, e), vte_oracle(&h, u, e).unwrap());
                }
            }
            for e in h.hyperedges() {
                prop_assert_eq!(t.mcd(&order, e), mcd_bruteforce(&h, &order, e).unwrap());
                for &u in h.members(e) {
                    for &v in h.members(e) {
                        prop_assert!(t.mr(u, v) >= h.edge_size(e));
                    }
                }
            }
        }

        #[test]
        fn s_reach_is_monotone(h in small_graph(), s in 1u32..6) {
            for u in h.vertices() {
                for v in h.vertices() {
                    if s_reach_oracle(&h, u, v, s).unwrap() {
                        for lower in 1..s {
                            prop_assert!(s_reach_oracle(&h, u, v, lower).unwrap());
                        }
                    }
                }
            }
        }
    }
}
