use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::{ConstructionStats, QueueItem};
use crate::hypergraph::{Hypergraph, NeighborScratch};
use crate::label::{Flavor, HlIndex, Label};
use crate::order::HyperedgeOrder;
use crate::query::merge;
use crate::HyperedgeId;

const UNSET: u32 = u32::MAX;

pub fn build_basic(h: &Hypergraph, order: &HyperedgeOrder) -> HlIndex {
    build_basic_with_stats(h, order).0
}

pub fn build_basic_with_stats(h: &Hypergraph, order: &HyperedgeOrder) -> (HlIndex, ConstructionStats) {
    let start = Instant::now();
    let n = h.num_vertices();
    let m = h.num_hyperedges();
    let mut stats = ConstructionStats::default();
    let mut labels: Vec<Vec<Label>> = vec![Vec::new(); n];
    let mut visited_v = vec![UNSET; n];
    let mut visited_e = vec![UNSET; m];
    let mut heap: BinaryHeap<QueueItem> = BinaryHeap::new();
    let mut scratch = NeighborScratch::new(m);
    let mut nbrs = Vec::new();
    let mut cover = CoverSearch::new(m);

    for &e in order.sequence() {
        let source_rank = order.rank(e);
        heap.clear();
        heap.push((h.edge_size(e), Reverse(source_rank)));
        stats.queue_pushes += 1;
        while let Some((s, Reverse(r))) = heap.pop() {
            stats.queue_pops += 1;
            let eu = order.at_rank(r);
            if visited_e[eu as usize] == e {
                continue;
            }
            visited_e[eu as usize] = e;
            if cover.is_covered(h, order, Some(&labels), e, eu, s, &mut stats) {
                stats.pops_covered += 1;
                continue;
            }
            for &u in h.members(eu) {
                if visited_v[u as usize] == e {
                    continue;
                }
                labels[u as usize].push(Label { hyperedge: e, s });
                visited_v[u as usize] = e;
            }
            nbrs.clear();
            scratch.collect(h, eu, &mut nbrs);
            for &(ev, od) in &nbrs {
                if order.rank(ev) <= source_rank || visited_e[ev as usize] == e {
                    continue;
                }
                heap.push((s.min(od), Reverse(order.rank(ev))));
                stats.queue_pushes += 1;
            }
        }
    }

    let index = HlIndex::from_lists(order, labels, Flavor::Basic);
    stats.labels = index.total_labels();
    stats.wall_time = start.elapsed();
    (index, stats)
}

/// Whether some hyperedge more important than `e` reaches both `e` and `eu`
/// through walks of overlapping degree at least `s`.
///
/// When `partial` labels are given they are consulted first: if they do not
/// already show `s`-reachability between a member of `eu` and a member of
/// `e`, no such hyperedge can exist and the search is skipped.
pub fn is_covered_online(
    h: &Hypergraph,
    order: &HyperedgeOrder,
    partial: Option<&[Vec<Label>]>,
    e: HyperedgeId,
    eu: HyperedgeId,
    s: u32,
) -> bool {
    let mut stats = ConstructionStats::default();
    CoverSearch::new(h.num_hyperedges()).is_covered(h, order, partial, e, eu, s, &mut stats)
}

/// Scratch for the bidirectional BFS over the `OD >= s` hyperedge graph.
struct CoverSearch {
    seen: [Vec<u32>; 2],
    stamp: u32,
    frontier: [Vec<HyperedgeId>; 2],
    next: Vec<HyperedgeId>,
    scratch: NeighborScratch,
    nbrs: Vec<(HyperedgeId, u32)>,
}

impl CoverSearch {
    fn new(m: usize) -> Self {
        Self {
            seen: [vec![0; m], vec![0; m]],
            stamp: 0,
            frontier: [Vec::new(), Vec::new()],
            next: Vec::new(),
            scratch: NeighborScratch::new(m),
            nbrs: Vec::new(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn is_covered(
        &mut self,
        h: &Hypergraph,
        order: &HyperedgeOrder,
        partial: Option<&[Vec<Label>]>,
        e: HyperedgeId,
        eu: HyperedgeId,
        s: u32,
        stats: &mut ConstructionStats,
    ) -> bool {
        let limit = order.rank(e);
        if limit == 0 || s > h.edge_size(e).min(h.edge_size(eu)) {
            return false;
        }
        if let Some(labels) = partial {
            let a = h.members(eu)[0] as usize;
            let b = h.members(e)[0] as usize;
            if !merge(&labels[a], &labels[b], |x| order.rank(x), s - 1, true).hit {
                stats.cover_prefiltered += 1;
                return false;
            }
        }
        stats.cover_searches += 1;

        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.seen[0].fill(0);
            self.seen[1].fill(0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        let starts = [e, eu];
        let mut higher = [false, order.rank(eu) < limit];
        let mut met = e == eu;
        for (side, &start) in starts.iter().enumerate() {
            self.frontier[side].clear();
            self.frontier[side].push(start);
            self.seen[side][start as usize] = stamp;
        }
        if self.seen[0][eu as usize] == stamp {
            met = true;
        }

        loop {
            if met && (higher[0] || higher[1]) {
                return true;
            }
            for side in 0..2 {
                if self.frontier[side].is_empty() {
                    // This side's component is fully explored.
                    let other_start = starts[1 - side] as usize;
                    return (met || self.seen[side][other_start] == stamp) && higher[side];
                }
            }
            let side = if self.frontier[0].len() <= self.frontier[1].len() { 0 } else { 1 };
            let other = 1 - side;
            self.next.clear();
            let frontier = std::mem::take(&mut self.frontier[side]);
            for &x in &frontier {
                self.nbrs.clear();
                self.scratch.collect(h, x, &mut self.nbrs);
                for &(y, od) in &self.nbrs {
                    if od < s || self.seen[side][y as usize] == stamp {
                        continue;
                    }
                    self.seen[side][y as usize] = stamp;
                    let both = self.seen[other][y as usize] == stamp;
                    met |= both;
                    if order.rank(y) < limit {
                        if both {
                            return true;
                        }
                        higher[side] = true;
                    }
                    self.next.push(y);
                }
            }
            self.frontier[side] = frontier;
            std::mem::swap(&mut self.frontier[side], &mut self.next);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{self, edge, vertex};
    use crate::hypergraph::parse_str;

    #[test]
    fn most_important_source_is_never_covered() {
        let h = fixture::hypergraph();
        let order = HyperedgeOrder::compute(&h);
        let top = order.at_rank(0);
        for eu in h.hyperedges() {
            for s in 1..=6 {
                assert!(!is_covered_online(&h, &order, None, top, eu, s));
            }
        }
    }

    #[test]
    fn oversized_level_is_never_covered() {
        let h = fixture::hypergraph();
        let order = HyperedgeOrder::compute(&h);
        // |e1| = 2
        assert!(!is_covered_online(&h, &order, None, edge(7), edge(1), 3));
    }

    #[test]
    fn transitive_cover_through_more_important_hyperedge() {
        let h = fixture::hypergraph();
        // e2 < e6 < e4 < everything else
        let mut seq = vec![edge(2), edge(6), edge(4)];
        seq.extend([1, 3, 5, 7].map(edge));
        let order = HyperedgeOrder::from_sequence(seq);
        // e4 reaches e6 at level 2 (through e2); e2 reaches both at level 2.
        assert!(is_covered_online(&h, &order, None, edge(6), edge(4), 2));
        assert!(!is_covered_online(&h, &order, None, edge(6), edge(4), 3));
        let full = build_basic(&h, &order);
        let lists = full.to_lists();
        assert!(is_covered_online(&h, &order, Some(&lists), edge(6), edge(4), 2));
    }

    #[test]
    fn single_hyperedge_labels() {
        let h = parse_str("0 1").unwrap();
        let order = HyperedgeOrder::compute(&h);
        let idx = build_basic(&h, &order);
        let expect = [Label { hyperedge: 0, s: 2 }];
        assert_eq!(idx.labels(0), &expect);
        assert_eq!(idx.labels(1), &expect);
    }

    #[test]
    fn fixture_top_hub_labels() {
        let h = fixture::hypergraph();
        let order = HyperedgeOrder::compute(&h);
        let idx = build_basic(&h, &order);
        for v in [3, 4, 5, 6, 7, 8] {
            assert_eq!(idx.labels(vertex(v))[0], Label { hyperedge: edge(2), s: 6 });
        }
        assert_eq!(idx.labels(vertex(10))[0], Label { hyperedge: edge(2), s: 2 });
    }
}
