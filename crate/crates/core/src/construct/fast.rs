use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::neighbor_index::NeighborIndex;
use super::{ConstructionStats, QueueItem};
use crate::hypergraph::{Hypergraph, NeighborScratch};
use crate::label::{DualIndex, Flavor, HlIndex, Label};
use crate::order::HyperedgeOrder;

const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct FastBuild {
    pub index: HlIndex,
    /// Transpose of `index`, each list in pop order (non-ascending `s`).
    pub dual: DualIndex,
    pub stats: ConstructionStats,
    /// Cover degree of every hyperedge as recorded when its turn as a source
    /// came up (whether or not it was then skipped).
    pub epoch_mcd: Vec<u32>,
}

pub fn build_fast(h: &Hypergraph, order: &HyperedgeOrder) -> FastBuild {
    let start = Instant::now();
    let n = h.num_vertices();
    let m = h.num_hyperedges();
    let mut stats = ConstructionStats::default();
    let mut labels: Vec<Vec<Label>> = vec![Vec::new(); n];
    let mut dual = DualIndex::new(m);
    let mut visited_v = vec![UNSET; n];
    let mut visited_e = vec![UNSET; m];
    let mut mcd = vec![0u32; m];
    let mut epoch_mcd = vec![0u32; m];
    let mut heap: BinaryHeap<QueueItem> = BinaryHeap::new();
    let mut nidx = NeighborIndex::new(m);
    let mut scratch = NeighborScratch::new(m);
    let mut nbrs = Vec::new();
    let mut mirrors: Vec<(u32, u32)> = Vec::new();

    for &e in order.sequence() {
        let source_rank = order.rank(e);
        let size = h.edge_size(e);
        epoch_mcd[e as usize] = mcd[e as usize];
        if mcd[e as usize] >= size {
            stats.skipped_sources += 1;
            continue;
        }
        // Fixed for the whole epoch; the source never raises its own bound.
        let mcd_e = mcd[e as usize];

        heap.clear();
        heap.push((size, Reverse(source_rank)));
        stats.queue_pushes += 1;
        while let Some((s, Reverse(r))) = heap.pop() {
            stats.queue_pops += 1;
            let eu = order.at_rank(r);
            if visited_e[eu as usize] == e {
                continue;
            }
            visited_e[eu as usize] = e;
            if eu != e {
                let slot = &mut mcd[eu as usize];
                *slot = (*slot).max(s);
            }

            for &u in h.members(eu) {
                if visited_v[u as usize] == e {
                    continue;
                }
                labels[u as usize].push(Label { hyperedge: e, s });
                dual.push(e, u, s);
                visited_v[u as usize] = e;
            }

            if !nidx.is_initialized(eu) {
                nbrs.clear();
                scratch.collect(h, eu, &mut nbrs);
                let mut entries: Vec<(u32, u32)> = nbrs
                    .iter()
                    .map(|&(ev, od)| (order.rank(ev), od))
                    .filter(|&(rv, _)| rv > source_rank)
                    .collect();
                entries.sort_unstable();
                nidx.init(eu, entries);
            }

            mirrors.clear();
            let len = nidx.advance(eu, source_rank);
            for i in 0..len {
                let (rv, od) = nidx.entry(eu, i);
                if od == 0 {
                    continue;
                }
                let ev = order.at_rank(rv);
                if od > mcd_e && visited_e[ev as usize] != e {
                    heap.push((s.min(od), Reverse(rv)));
                    stats.queue_pushes += 1;
                }
                if od <= s {
                    // e already reaches ev through eu at level od, so later
                    // sources never need this pair.
                    nidx.delete_at(eu, i);
                    mirrors.push((ev, r));
                }
            }
            for &(ev, rank_u) in &mirrors {
                nidx.delete_rank(ev, rank_u);
            }
            nidx.compact(eu);
        }
    }

    stats.neighbor_peak_total = nidx.peak_total;
    stats.neighbor_peak_list = nidx.peak_list;
    stats.neighbor_insertions = nidx.insertions;
    let index = HlIndex::from_lists(order, labels, Flavor::Fast);
    stats.labels = index.total_labels();
    stats.wall_time = start.elapsed();
    FastBuild {
        index,
        dual,
        stats,
        epoch_mcd,
    }
}
