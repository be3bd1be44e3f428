//! Hyperedge importance order.

use crate::hypergraph::Hypergraph;
use crate::HyperedgeId;

/// Total order over hyperedges. Rank 0 is the most important hyperedge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperedgeOrder {
    rank: Vec<u32>,
    by_rank: Vec<HyperedgeId>,
    weight: Vec<u64>,
}

impl HyperedgeOrder {
    /// Weight of `e` is `Σ_{v∈e} |E(v)|²`; heavier hyperedges come first and
    /// ties go to the smaller id.
    pub fn compute(h: &Hypergraph) -> Self {
        let weight: Vec<u64> = h
            .hyperedges()
            .map(|e| {
                h.members(e).iter().fold(0u64, |acc, &v| {
                    let d = h.incident(v).len() as u64;
                    acc.checked_add(d * d).expect("hyperedge weight overflows u64")
                })
            })
            .collect();
        let mut by_rank: Vec<HyperedgeId> = h.hyperedges().collect();
        by_rank.sort_unstable_by(|&a, &b| {
            weight[b as usize]
                .cmp(&weight[a as usize])
                .then(a.cmp(&b))
        });
        let rank = invert(&by_rank);
        Self {
            rank,
            by_rank,
            weight,
        }
    }

    /// An explicit order, most important first. Weights are synthesized as
    /// `m - position` so they agree with the ranks.
    ///
    /// Panics unless `sequence` is a permutation of `0..m`.
    pub fn from_sequence(sequence: Vec<HyperedgeId>) -> Self {
        let m = sequence.len();
        let rank = invert(&sequence);
        let weight = (0..m).map(|e| (m - rank[e] as usize) as u64).collect();
        Self {
            rank,
            by_rank: sequence,
            weight,
        }
    }

    /// Rebuilds an order from a stored rank array.
    pub fn from_ranks(rank: Vec<u32>) -> Option<Self> {
        let m = rank.len();
        let mut by_rank = vec![u32::MAX; m];
        for (e, &r) in rank.iter().enumerate() {
            let slot = by_rank.get_mut(r as usize)?;
            if *slot != u32::MAX {
                return None;
            }
            *slot = e as HyperedgeId;
        }
        let weight = (0..m).map(|e| (m - rank[e] as usize) as u64).collect();
        Some(Self {
            rank,
            by_rank,
            weight,
        })
    }

    #[inline]
    pub fn rank(&self, e: HyperedgeId) -> u32 {
        self.rank[e as usize]
    }

    #[inline]
    pub fn at_rank(&self, r: u32) -> HyperedgeId {
        self.by_rank[r as usize]
    }

    pub fn weight(&self, e: HyperedgeId) -> u64 {
        self.weight[e as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Hyperedges from most to least important.
    pub fn sequence(&self) -> &[HyperedgeId] {
        &self.by_rank
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }
}

fn invert(sequence: &[HyperedgeId]) -> Vec<u32> {
    let mut rank = vec![u32::MAX; sequence.len()];
    for (r, &e) in sequence.iter().enumerate() {
        assert!(
            rank[e as usize] == u32::MAX,
            "hyperedge {e} appears twice in order"
        );
        rank[e as usize] = r as u32;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;
    use crate::hypergraph::parse_str;
    use proptest::prelude::*;

    #[test]
    fn single_hyperedge() {
        let h = parse_str("0 1").unwrap();
        let o = HyperedgeOrder::compute(&h);
        assert_eq!(o.rank(0), 0);
        assert_eq!(o.weight(0), 2);
    }

    #[test]
    fn fixture_weights() {
        let h = fixture::hypergraph();
        let o = HyperedgeOrder::compute(&h);
        let e = fixture::edge;
        // degrees: v3, v4 -> 3; v5..v8 -> 2
        assert_eq!(o.weight(e(2)), 9 + 9 + 4 + 4 + 4 + 4);
        assert_eq!(o.weight(e(4)), 9 + 9 + 1 + 4);
        assert_eq!(o.weight(e(7)), 4 + 9 + 9);
        assert_eq!(o.weight(e(1)), 4 + 1);
        assert_eq!(o.rank(e(2)), 0);
        assert_eq!(o.at_rank(0), e(2));
    }

    #[test]
    fn ties_go_to_smaller_id() {
        let h = parse_str("1 2\n3 4\n").unwrap();
        let o = HyperedgeOrder::compute(&h);
        assert_eq!(o.weight(0), o.weight(1));
        assert_eq!(o.sequence(), &[0, 1]);
    }

    #[test]
    fn from_ranks_rejects_non_permutations() {
        assert!(HyperedgeOrder::from_ranks(vec![1, 0, 2]).is_some());
        assert!(HyperedgeOrder::from_ranks(vec![0, 0]).is_none());
        assert!(HyperedgeOrder::from_ranks(vec![0, 5]).is_none());
    }

    proptest! {
        #[test]
        fn order_is_consistent_with_weights(
            edges in prop::collection::vec(prop::collection::vec(0u64..12, 1..5), 1..20)
        ) {
            let h = Hypergraph::from_token_lists(edges).unwrap();
            let o = HyperedgeOrder::compute(&h);
            let mut seen = vec![false; h.num_hyperedges()];
            for e in h.hyperedges() {
                seen[o.rank(e) as usize] = true;
            }
            prop_assert!(seen.iter().all(|&s| s));
            for w in o.sequence().windows(2) {
                let (a, b) = (w[0], w[1]);
                prop_assert!(o.weight(a) > o.weight(b) || (o.weight(a) == o.weight(b) && a < b));
            }
            prop_assert_eq!(HyperedgeOrder::compute(&h), o);
        }
    }
}
