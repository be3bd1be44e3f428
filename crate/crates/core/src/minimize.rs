//! Redundant-label removal.
//!
//! Hubs are visited from most to least important. For hub `e`, the vertices
//! of `D(e)` are examined in non-ascending `s`; the label `(e, s_u)` of `u`
//! may go only if every still-unexamined vertex `v` of `D(e)` (including `u`
//! itself) is joined to `u` at level `>= s_v` through some other live hub.
//! When a label is kept, every unexamined vertex it could not be paired with
//! elsewhere is marked non-redundant, since that pair is supported by `e`
//! alone.

use crate::error::IntegrityError;
use crate::hypergraph::Hypergraph;
use crate::label::{DualIndex, Flavor, HlIndex, Label};
use crate::oracle::OracleTables;
use crate::order::HyperedgeOrder;
use crate::query::mr_query;
use crate::{HyperedgeId, VertexId};

const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct MinimizeStats {
    pub examined: usize,
    pub removed: usize,
    pub kept: usize,
    /// `θ = max_e |D(e)|`.
    pub theta: usize,
    /// `β`, the largest inverted list built.
    pub beta: usize,
    /// `l_v = max_u |L(u)|` of the input.
    pub max_labels_per_vertex: usize,
}

struct Working {
    labels: Vec<Vec<Label>>,
    alive: Vec<Vec<bool>>,
}

impl Working {
    fn position(&self, order: &HyperedgeOrder, u: VertexId, e: HyperedgeId) -> Option<usize> {
        let r = order.rank(e);
        self.labels[u as usize]
            .binary_search_by_key(&r, |l| order.rank(l.hyperedge))
            .ok()
    }
}

fn check_pair(index: &HlIndex, dual: &DualIndex) -> Result<(), IntegrityError> {
    if dual.num_hyperedges() != index.num_hyperedges() {
        return Err(IntegrityError::Shape);
    }
    let (d, l) = (dual.total_entries(), index.total_labels());
    if d != l {
        return Err(IntegrityError::SizeMismatch { dual: d, labels: l });
    }
    let n = index.num_vertices();
    let mut seen = vec![UNSET; n];
    for e in 0..dual.num_hyperedges() as HyperedgeId {
        let list = dual.get(e);
        if list.windows(2).any(|w| w[0].1 < w[1].1) {
            return Err(IntegrityError::UnsortedDual(e));
        }
        for &(u, s) in list {
            if u as usize >= n || seen[u as usize] == e {
                return Err(IntegrityError::Shape);
            }
            seen[u as usize] = e;
            let found = index
                .labels(u)
                .binary_search_by_key(&index.rank(e), |l| index.rank(l.hyperedge))
                .ok()
                .map(|i| index.labels(u)[i]);
            if found != Some(Label { hyperedge: e, s }) {
                return Err(IntegrityError::MissingDual { vertex: u, hyperedge: e, s });
            }
        }
    }
    Ok(())
}

/// Removes redundant labels from a complete index and its dual.
pub fn minimize(
    index: &HlIndex,
    dual: &DualIndex,
    order: &HyperedgeOrder,
) -> Result<(HlIndex, MinimizeStats), IntegrityError> {
    if order.ranks() != index.ranks() {
        return Err(IntegrityError::Shape);
    }
    check_pair(index, dual)?;
    let n = index.num_vertices();
    let m = index.num_hyperedges();
    let mut stats = MinimizeStats {
        theta: dual.max_list_len(),
        max_labels_per_vertex: index.max_labels_per_vertex(),
        ..Default::default()
    };
    let labels = index.to_lists();
    let alive = labels.iter().map(|l| vec![true; l.len()]).collect();
    let mut work = Working { labels, alive };

    let mut in_dual = vec![UNSET; n];
    let mut non_redundant = vec![UNSET; n];
    let mut support_stamp = vec![0u64; n];
    let mut stamp: u64 = 0;
    let mut inverted: Vec<Vec<(VertexId, u32)>> = vec![Vec::new(); m];
    let mut inverted_tag = vec![UNSET; m];

    for &e in order.sequence() {
        let entries = dual.get(e);
        if entries.is_empty() {
            continue;
        }
        for &(v, _) in entries {
            in_dual[v as usize] = e;
        }
        let mut remaining = entries.len();

        for &(v, sv) in entries {
            for (l, &live) in work.labels[v as usize].iter().zip(&work.alive[v as usize]) {
                if !live || l.hyperedge == e || l.s < sv {
                    continue;
                }
                let slot = l.hyperedge as usize;
                if inverted_tag[slot] != e {
                    inverted_tag[slot] = e;
                    inverted[slot].clear();
                }
                inverted[slot].push((v, sv));
                stats.beta = stats.beta.max(inverted[slot].len());
            }
        }

        let mut nr_count = 0usize;
        for (idx, &(u, _)) in entries.iter().enumerate() {
            stats.examined += 1;
            stamp += 1;
            let mut supported = 0usize;
            'scan: for (l, &live) in work.labels[u as usize].iter().zip(&work.alive[u as usize]) {
                if !live || l.hyperedge == e || inverted_tag[l.hyperedge as usize] != e {
                    continue;
                }
                for &(v, sv) in &inverted[l.hyperedge as usize] {
                    if in_dual[v as usize] != e || l.s < sv || support_stamp[v as usize] == stamp {
                        continue;
                    }
                    support_stamp[v as usize] = stamp;
                    supported += 1;
                    if supported == remaining {
                        break 'scan;
                    }
                }
            }

            if supported < remaining || non_redundant[u as usize] == e {
                stats.kept += 1;
                for &(w, _) in &entries[idx..] {
                    let w = w as usize;
                    if in_dual[w] == e && support_stamp[w] != stamp && non_redundant[w] != e {
                        non_redundant[w] = e;
                        nr_count += 1;
                    }
                }
            } else {
                let pos = work.position(order, u, e).expect("label present");
                work.alive[u as usize][pos] = false;
                stats.removed += 1;
            }

            if non_redundant[u as usize] == e {
                non_redundant[u as usize] = UNSET;
                nr_count -= 1;
            }
            in_dual[u as usize] = UNSET;
            remaining -= 1;
            if nr_count == remaining {
                // Everything left is known to be needed.
                stats.kept += remaining;
                stats.examined += remaining;
                for &(w, _) in &entries[idx + 1..] {
                    in_dual[w as usize] = UNSET;
                    non_redundant[w as usize] = UNSET;
                }
                break;
            }
        }
    }

    let lists = work
        .labels
        .into_iter()
        .zip(work.alive)
        .map(|(ls, alive)| {
            ls.into_iter()
                .zip(alive)
                .filter_map(|(l, keep)| keep.then_some(l))
                .collect()
        })
        .collect();
    Ok((HlIndex::from_lists(order, lists, Flavor::Minimal), stats))
}

/// A pair the index answers differently from the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub u: VertexId,
    pub v: VertexId,
    pub got: u32,
    pub want: u32,
}

/// Every pair `(u, v)`, `u <= v`, on which `index` disagrees with the
/// oracle.
pub fn verify_completeness(index: &HlIndex, h: &Hypergraph) -> Vec<Mismatch> {
    let oracle = OracleTables::compute(h);
    completeness_against(index, &oracle)
}

pub fn completeness_against(index: &HlIndex, oracle: &OracleTables) -> Vec<Mismatch> {
    let n = oracle.num_vertices() as VertexId;
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            let got = mr_query(index, u, v).map(|r| r.mr().unwrap_or(0)).unwrap_or(0);
            let want = oracle.mr(u, v);
            if got != want {
                out.push(Mismatch { u, v, got, want });
            }
        }
    }
    out
}

/// Labels that can be deleted on their own without any query changing.
/// Removing a label of `u` can only affect queries with `u` as an endpoint,
/// so only those are re-run.
pub fn verify_necessity(index: &HlIndex, h: &Hypergraph) -> Vec<(VertexId, Label)> {
    let oracle = OracleTables::compute(h);
    let n = index.num_vertices() as VertexId;
    let mut redundant = Vec::new();
    for u in 0..n {
        for (i, &label) in index.labels(u).iter().enumerate() {
            let trial = index.without_label(u, i);
            let breaks = (0..n).any(|v| {
                mr_query(&trial, u, v).ok().and_then(|r| r.mr()) != Some(oracle.mr(u, v))
            });
            if !breaks {
                redundant.push((u, label));
            }
        }
    }
    redundant
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_fast;
    use crate::fixture;
    use crate::hypergraph::parse_str;

    fn minimal(h: &Hypergraph) -> (HlIndex, HlIndex, MinimizeStats) {
        let order = HyperedgeOrder::compute(h);
        let fast = build_fast(h, &order);
        let (min, stats) = minimize(&fast.index, &fast.dual, &order).unwrap();
        (fast.index, min, stats)
    }

    #[test]
    fn single_hyperedge_is_untouched() {
        let h = parse_str("1 2 3").unwrap();
        let (fast, min, stats) = minimal(&h);
        assert_eq!(fast.to_lists(), min.to_lists());
        assert_eq!(stats.removed, 0);
        assert_eq!(min.flavor(), Flavor::Minimal);
    }

    #[test]
    fn fixture_is_complete_and_necessary() {
        let h = fixture::hypergraph();
        let (fast, min, stats) = minimal(&h);
        assert!(verify_completeness(&min, &h).is_empty());
        assert!(verify_necessity(&min, &h).is_empty());
        assert!(min.total_labels() <= fast.total_labels());
        assert_eq!(stats.kept + stats.removed, fast.total_labels());
        // the fast index never reports a label as redundant wrongly: each
        // reported one really is removable
        for (u, label) in verify_necessity(&fast, &h) {
            let i = fast.labels(u).iter().position(|&l| l == label).unwrap();
            assert!(verify_completeness(&fast.without_label(u, i), &h).is_empty());
        }
    }

    #[test]
    fn deleting_a_minimal_label_breaks_a_query() {
        let h = fixture::hypergraph();
        let (_, min, _) = minimal(&h);
        let u = fixture::vertex(9);
        assert!(!verify_completeness(&min.without_label(u, 0), &h).is_empty());
    }

    #[test]
    fn single_label_index_is_necessary() {
        let h = parse_str("5").unwrap();
        let (_, min, _) = minimal(&h);
        assert_eq!(min.total_labels(), 1);
        assert!(verify_necessity(&min, &h).is_empty());
    }

    #[test]
    fn rejects_inconsistent_dual() {
        let h = fixture::hypergraph();
        let order = HyperedgeOrder::compute(&h);
        let fast = build_fast(&h, &order);
        let mut lists: Vec<Vec<(u32, u32)>> =
            (0..7).map(|e| fast.dual.get(e).to_vec()).collect();
        let moved = lists[0].pop().unwrap();
        lists[1].push(moved);
        let err = minimize(&fast.index, &DualIndex::from_lists(lists), &order).unwrap_err();
        assert!(matches!(
            err,
            IntegrityError::MissingDual { .. } | IntegrityError::UnsortedDual(_) | IntegrityError::Shape
        ));
        let short = DualIndex::new(7);
        assert!(matches!(
            minimize(&fast.index, &short, &order),
            Err(IntegrityError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn empty_graph_completeness() {
        let h = Hypergraph::from_token_lists(Vec::<Vec<u64>>::new()).unwrap();
        let order = HyperedgeOrder::compute(&h);
        let idx = HlIndex::from_lists(&order, Vec::new(), Flavor::Minimal);
        assert!(verify_completeness(&idx, &h).is_empty());
    }
}
