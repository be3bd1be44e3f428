//! Index-free max-reachability: a bidirectional best-first search over
//! hyperedges, plus walk utilities.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::ArgError;
use crate::hypergraph::{Hypergraph, NeighborScratch, NeighborTable};
use crate::{HyperedgeId, VertexId};

/// A non-empty hyperedge sequence whose consecutive members intersect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk(Vec<HyperedgeId>);

impl Walk {
    pub fn new(h: &Hypergraph, hyperedges: Vec<HyperedgeId>) -> Result<Self, ArgError> {
        if hyperedges.is_empty() {
            return Err(ArgError::EmptyWalk);
        }
        for &e in &hyperedges {
            h.check_hyperedge(e)?;
        }
        for w in hyperedges.windows(2) {
            if h.overlap_unchecked(w[0], w[1]) == 0 {
                return Err(ArgError::InvalidWalk { from: w[0], to: w[1] });
            }
        }
        Ok(Walk(hyperedges))
    }

    pub fn hyperedges(&self) -> &[HyperedgeId] {
        &self.0
    }

    pub fn concat(mut self, other: Walk) -> Walk {
        self.0.extend(other.0);
        self
    }
}

/// Walk overlapping degree: the smallest overlap between consecutive
/// hyperedges, or `|e|` for a single hyperedge.
pub fn wod(h: &Hypergraph, walk: &[HyperedgeId]) -> Result<u32, ArgError> {
    let walk = Walk::new(h, walk.to_vec())?;
    Ok(walk_overlap(h, &walk))
}

pub fn walk_overlap(h: &Hypergraph, walk: &Walk) -> u32 {
    match walk.0.as_slice() {
        [single] => h.edge_size(*single),
        seq => seq
            .windows(2)
            .map(|w| h.overlap_unchecked(w[0], w[1]))
            .min()
            .unwrap_or(0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborMode {
    #[default]
    OnTheFly,
    Precomputed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchConfig {
    pub neighbor_mode: NeighborMode,
    /// Stop once neither queue can beat the current answer.
    pub early_global_cutoff: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOutcome {
    pub value: u32,
    pub pops: u64,
    pub neighbor_scans: u64,
}

/// Reusable search state for repeated queries on one graph.
pub struct OnlineSearcher<'g> {
    graph: &'g Hypergraph,
    config: SearchConfig,
    table: Option<NeighborTable>,
    scratch: NeighborScratch,
    buf: Vec<(HyperedgeId, u32)>,
    // visit[0] is the side seeded from v, visit[1] from u; -1 is unvisited.
    visit: [Vec<i64>; 2],
    queues: [BinaryHeap<(u32, Reverse<HyperedgeId>)>; 2],
}

impl<'g> OnlineSearcher<'g> {
    pub fn new(graph: &'g Hypergraph, config: SearchConfig) -> Self {
        let m = graph.num_hyperedges();
        let table = match config.neighbor_mode {
            NeighborMode::Precomputed => Some(NeighborTable::build(graph)),
            NeighborMode::OnTheFly => None,
        };
        Self {
            graph,
            config,
            table,
            scratch: NeighborScratch::new(m),
            buf: Vec::new(),
            visit: [vec![-1; m], vec![-1; m]],
            queues: [BinaryHeap::new(), BinaryHeap::new()],
        }
    }

    pub fn mr(&mut self, u: VertexId, v: VertexId) -> Result<u32, ArgError> {
        self.search(u, v).map(|o| o.value)
    }

    pub fn search(&mut self, u: VertexId, v: VertexId) -> Result<SearchOutcome, ArgError> {
        let h = self.graph;
        h.check_vertex(u)?;
        h.check_vertex(v)?;
        for side in &mut self.visit {
            side.fill(-1);
        }
        for q in &mut self.queues {
            q.clear();
        }
        for &e in h.incident(v) {
            self.queues[0].push((h.edge_size(e), Reverse(e)));
        }
        for &e in h.incident(u) {
            self.queues[1].push((h.edge_size(e), Reverse(e)));
        }

        let mut out = SearchOutcome::default();
        let mut result: u32 = 0;
        let mut side = 0usize;
        while !(self.queues[0].is_empty() && self.queues[1].is_empty()) {
            if self.config.early_global_cutoff {
                let top = |q: &BinaryHeap<(u32, Reverse<HyperedgeId>)>| q.peek().map_or(0, |t| t.0);
                if top(&self.queues[0]) <= result && top(&self.queues[1]) <= result {
                    break;
                }
            }
            let other = 1 - side;
            let batch = self.queues[side].len();
            for _ in 0..batch {
                let Some((s, Reverse(e))) = self.queues[side].pop() else {
                    break;
                };
                out.pops += 1;
                if i64::from(s) <= self.visit[side][e as usize] || s <= result {
                    continue;
                }
                self.visit[side][e as usize] = i64::from(s);
                let opposite = self.visit[other][e as usize];
                if opposite > i64::from(result) {
                    // s > result as well, so this never lowers the answer.
                    result = s.min(opposite as u32);
                    continue;
                }
                self.buf.clear();
                match &self.table {
                    Some(table) => self.buf.extend_from_slice(table.get(e)),
                    None => self.scratch.collect(h, e, &mut self.buf),
                }
                for &(f, od) in &self.buf {
                    out.neighbor_scans += 1;
                    let level = s.min(od);
                    if level <= result || i64::from(level) <= self.visit[side][f as usize] {
                        continue;
                    }
                    let opposite = self.visit[other][f as usize];
                    if opposite > i64::from(result) {
                        result = level.min(opposite as u32);
                    }
                    self.queues[side].push((level, Reverse(f)));
                }
            }
            side = other;
        }
        out.value = result;
        Ok(out)
    }
}

/// One-shot convenience wrapper around [`OnlineSearcher`].
pub fn mr_online(h: &Hypergraph, u: VertexId, v: VertexId, cfg: SearchConfig) -> Result<u32, ArgError> {
    OnlineSearcher::new(h, cfg).mr(u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::{self, edge, vertex};
    use crate::hypergraph::parse_str;
    use crate::oracle::OracleTables;
    use proptest::prelude::*;

    const ALL_CONFIGS: [SearchConfig; 4] = [
        SearchConfig { neighbor_mode: NeighborMode::OnTheFly, early_global_cutoff: false },
        SearchConfig { neighbor_mode: NeighborMode::OnTheFly, early_global_cutoff: true },
        SearchConfig { neighbor_mode: NeighborMode::Precomputed, early_global_cutoff: false },
        SearchConfig { neighbor_mode: NeighborMode::Precomputed, early_global_cutoff: true },
    ];

    #[test]
    fn fixture_walks() {
        let h = fixture::hypergraph();
        assert_eq!(wod(&h, &[edge(2), edge(5), edge(3)]).unwrap(), 1);
        assert_eq!(wod(&h, &[edge(2)]).unwrap(), 6);
        assert_eq!(wod(&h, &[edge(7), edge(2), edge(5)]).unwrap(), 2);
        assert_eq!(
            wod(&h, &[edge(1), edge(3)]),
            Err(ArgError::InvalidWalk { from: edge(1), to: edge(3) })
        );
        assert_eq!(wod(&h, &[]), Err(ArgError::EmptyWalk));
    }

    #[test]
    fn concatenated_walk_takes_the_minimum() {
        let h = fixture::hypergraph();
        let a = Walk::new(&h, vec![edge(7), edge(2)]).unwrap();
        let b = Walk::new(&h, vec![edge(5), edge(3)]).unwrap();
        let joined = Walk::new(&h, a.concat(b).hyperedges().to_vec()).unwrap();
        assert_eq!(walk_overlap(&h, &joined), 1);
    }

    #[test]
    fn fixture_queries() {
        let h = fixture::hypergraph();
        for cfg in ALL_CONFIGS {
            assert_eq!(mr_online(&h, vertex(1), vertex(12), cfg).unwrap(), 2);
            assert_eq!(mr_online(&h, vertex(5), vertex(9), cfg).unwrap(), 2);
            assert_eq!(mr_online(&h, vertex(6), vertex(9), cfg).unwrap(), 2);
            assert_eq!(mr_online(&h, vertex(3), vertex(3), cfg).unwrap(), 6);
        }
        assert!(mr_online(&h, 0, 12, SearchConfig::default()).is_err());
    }

    #[test]
    fn disconnected_pair_is_zero() {
        let h = parse_str("1 2\n3 4\n").unwrap();
        assert_eq!(mr_online(&h, 0, 2, SearchConfig::default()).unwrap(), 0);
    }

    fn small_graph() -> impl Strategy<Value = Hypergraph> {
        prop::collection::vec(prop::collection::vec(0u64..16, 1..6), 1..16)
            .prop_map(|edges| Hypergraph::from_token_lists(edges).unwrap())
    }

    proptest! {
        #[test]
        fn agrees_with_oracle_in_every_mode(h in small_graph()) {
            let t = OracleTables::compute(&h);
            for cfg in ALL_CONFIGS {
                let mut searcher = OnlineSearcher::new(&h, cfg);
                for u in h.vertices() {
                    for v in h.vertices() {
                        prop_assert_eq!(searcher.mr(u, v).unwrap(), t.mr(u, v));
                    }
                }
            }
        }

        #[test]
        fn invariant_under_hyperedge_relabeling(
            edges in prop::collection::vec(prop::collection::vec(0u64..12, 1..5), 1..12),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let h = Hypergraph::from_token_lists(edges.clone()).unwrap();
            let mut shuffled = edges;
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let g = Hypergraph::from_token_lists(shuffled).unwrap();
            let cfg = SearchConfig::default();
            for u in h.vertices() {
                for v in h.vertices() {
                    let gu = g.dense_id(h.original_id(u)).unwrap();
                    let gv = g.dense_id(h.original_id(v)).unwrap();
                    prop_assert_eq!(mr_online(&h, u, v, cfg).unwrap(), mr_online(&g, gu, gv, cfg).unwrap());
                }
            }
        }
    }
}
