//! Label storage shared by construction, minimization, queries and
//! persistence.

use crate::order::HyperedgeOrder;
use crate::{HyperedgeId, VertexId};

/// `(e, s)` in the label set of a vertex `u`: `u` reaches hyperedge `e`
/// through a walk with overlapping degree `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label {
    pub hyperedge: HyperedgeId,
    pub s: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReachabilityTuple {
    pub vertex: VertexId,
    pub hyperedge: HyperedgeId,
    pub s: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Basic,
    Fast,
    Minimal,
}

impl Flavor {
    pub fn to_byte(self) -> u8 {
        match self {
            Flavor::Basic => 0,
            Flavor::Fast => 1,
            Flavor::Minimal => 2,
        }
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(Flavor::Basic),
            1 => Some(Flavor::Fast),
            2 => Some(Flavor::Minimal),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Basic => "basic",
            Flavor::Fast => "fast",
            Flavor::Minimal => "minimal",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Flavor::Basic),
            "fast" => Ok(Flavor::Fast),
            "minimal" => Ok(Flavor::Minimal),
            other => Err(format!("unknown index method {other:?}")),
        }
    }
}

/// Per-vertex label lists, each sorted by ascending hyperedge rank (most
/// important hub first), plus the rank array needed to merge them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HlIndex {
    ranks: Vec<u32>,
    offsets: Vec<usize>,
    labels: Vec<Label>,
    flavor: Flavor,
}

impl HlIndex {
    /// Packs per-vertex lists. Each list must already be rank-sorted.
    pub fn from_lists(order: &HyperedgeOrder, lists: Vec<Vec<Label>>, flavor: Flavor) -> Self {
        Self::from_parts(order.ranks().to_vec(), lists, flavor)
    }

    pub(crate) fn from_parts(ranks: Vec<u32>, lists: Vec<Vec<Label>>, flavor: Flavor) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let total = lists.iter().map(Vec::len).sum();
        let mut labels = Vec::with_capacity(total);
        for list in lists {
            debug_assert!(list
                .windows(2)
                .all(|w| ranks[w[0].hyperedge as usize] < ranks[w[1].hyperedge as usize]));
            labels.extend(list);
            offsets.push(labels.len());
        }
        Self {
            ranks,
            offsets,
            labels,
            flavor,
        }
    }

    #[inline]
    pub fn labels(&self, u: VertexId) -> &[Label] {
        &self.labels[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    #[inline]
    pub fn rank(&self, e: HyperedgeId) -> u32 {
        self.ranks[e as usize]
    }

    pub fn ranks(&self) -> &[u32] {
        &self.ranks
    }

    pub fn order(&self) -> HyperedgeOrder {
        HyperedgeOrder::from_ranks(self.ranks.clone()).expect("index ranks form a permutation")
    }

    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn num_hyperedges(&self) -> usize {
        self.ranks.len()
    }

    pub fn total_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn max_labels_per_vertex(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn to_lists(&self) -> Vec<Vec<Label>> {
        (0..self.num_vertices() as VertexId)
            .map(|u| self.labels(u).to_vec())
            .collect()
    }

    /// Copy of the index with label `idx` of vertex `u` removed.
    pub fn without_label(&self, u: VertexId, idx: usize) -> HlIndex {
        let mut lists = self.to_lists();
        lists[u as usize].remove(idx);
        HlIndex::from_parts(self.ranks.clone(), lists, self.flavor)
    }

    /// Builds the transpose `D(e) = {(u, s) | (e, s) ∈ L(u)}`, each list
    /// sorted by non-ascending `s` (ties by vertex id).
    pub fn dual(&self) -> DualIndex {
        let mut lists = vec![Vec::new(); self.num_hyperedges()];
        for u in 0..self.num_vertices() as VertexId {
            for l in self.labels(u) {
                lists[l.hyperedge as usize].push((u, l.s));
            }
        }
        for list in &mut lists {
            list.sort_by(|a: &(u32, u32), b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        }
        DualIndex { lists }
    }
}

/// `D(e)`: vertices holding a label on hub `e`, in non-ascending `s`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualIndex {
    pub(crate) lists: Vec<Vec<(VertexId, u32)>>,
}

impl DualIndex {
    pub fn new(m: usize) -> Self {
        Self {
            lists: vec![Vec::new(); m],
        }
    }

    pub fn from_lists(lists: Vec<Vec<(VertexId, u32)>>) -> Self {
        Self { lists }
    }

    pub fn get(&self, e: HyperedgeId) -> &[(VertexId, u32)] {
        &self.lists[e as usize]
    }

    pub(crate) fn push(&mut self, e: HyperedgeId, u: VertexId, s: u32) {
        self.lists[e as usize].push((u, s));
    }

    pub fn num_hyperedges(&self) -> usize {
        self.lists.len()
    }

    pub fn total_entries(&self) -> usize {
        self.lists.iter().map(Vec::len).sum()
    }

    /// `θ = max_e |D(e)|`.
    pub fn max_list_len(&self) -> usize {
        self.lists.iter().map(Vec::len).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flavor_roundtrips() {
        for f in [Flavor::Basic, Flavor::Fast, Flavor::Minimal] {
            assert_eq!(Flavor::from_byte(f.to_byte()), Some(f));
            assert_eq!(f.name().parse::<Flavor>(), Ok(f));
        }
        assert_eq!(Flavor::from_byte(9), None);
        assert!("eager".parse::<Flavor>().is_err());
    }

    #[test]
    fn dual_transposes_labels() {
        let order = HyperedgeOrder::from_sequence(vec![1, 0]);
        let l = |hyperedge, s| Label { hyperedge, s };
        let idx = HlIndex::from_lists(
            &order,
            vec![vec![l(1, 2), l(0, 3)], vec![l(1, 5)], vec![l(0, 3)]],
            Flavor::Fast,
        );
        let dual = idx.dual();
        assert_eq!(dual.get(1), &[(1, 5), (0, 2)]);
        assert_eq!(dual.get(0), &[(0, 3), (2, 3)]);
        assert_eq!(dual.total_entries(), idx.total_labels());
        assert_eq!(idx.max_labels_per_vertex(), 2);
        let smaller = idx.without_label(0, 1);
        assert_eq!(smaller.labels(0), &[l(1, 2)]);
        assert_eq!(smaller.total_labels(), 3);
    }
}
