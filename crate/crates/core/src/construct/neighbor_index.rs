//! Lazily built per-hyperedge neighbor lists that shrink as construction
//! proves entries useless.
//!
//! Each list holds `(neighbor rank, overlap)` sorted by rank. Deleted entries
//! become tombstones (overlap 0) and are compacted away once they outnumber
//! live ones. Entries whose rank is at or below the current source's rank can
//! never be used again, so they are dropped from the front as the sources
//! advance.

use crate::HyperedgeId;

#[derive(Debug, Default)]
struct NeighborList {
    entries: Vec<(u32, u32)>,
    head: usize,
    live: usize,
}

#[derive(Debug)]
pub(crate) struct NeighborIndex {
    lists: Vec<Option<NeighborList>>,
    resident: usize,
    pub peak_total: usize,
    pub peak_list: usize,
    pub insertions: usize,
}

impl NeighborIndex {
    pub fn new(m: usize) -> Self {
        Self {
            lists: (0..m).map(|_| None).collect(),
            resident: 0,
            peak_total: 0,
            peak_list: 0,
            insertions: 0,
        }
    }

    pub fn is_initialized(&self, e: HyperedgeId) -> bool {
        self.lists[e as usize].is_some()
    }

    /// `entries` must be sorted by rank and carry positive overlaps.
    pub fn init(&mut self, e: HyperedgeId, entries: Vec<(u32, u32)>) {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        let len = entries.len();
        self.insertions += len;
        self.resident += len;
        self.peak_total = self.peak_total.max(self.resident);
        self.peak_list = self.peak_list.max(len);
        self.lists[e as usize] = Some(NeighborList {
            entries,
            head: 0,
            live: len,
        });
    }

    /// Drops entries with rank `<= min_rank` from the front and returns the
    /// remaining slice length; entries are then read with [`Self::entry`].
    pub fn advance(&mut self, e: HyperedgeId, min_rank: u32) -> usize {
        let list = self.lists[e as usize].as_mut().expect("initialized");
        while list.head < list.entries.len() && list.entries[list.head].0 <= min_rank {
            if list.entries[list.head].1 != 0 {
                list.live -= 1;
                self.resident -= 1;
            }
            list.head += 1;
        }
        list.entries.len() - list.head
    }

    /// `(rank, overlap)` at offset `i` past the head; overlap 0 is a deleted
    /// entry.
    #[inline]
    pub fn entry(&self, e: HyperedgeId, i: usize) -> (u32, u32) {
        let list = self.lists[e as usize].as_ref().expect("initialized");
        list.entries[list.head + i]
    }

    pub fn delete_at(&mut self, e: HyperedgeId, i: usize) {
        let list = self.lists[e as usize].as_mut().expect("initialized");
        let slot = &mut list.entries[list.head + i].1;
        if *slot != 0 {
            *slot = 0;
            list.live -= 1;
            self.resident -= 1;
        }
    }

    /// Deletes the entry for the neighbor of rank `rank`, if `e`'s list
    /// exists and still holds it.
    pub fn delete_rank(&mut self, e: HyperedgeId, rank: u32) {
        let Some(list) = self.lists[e as usize].as_mut() else {
            return;
        };
        let tail = &mut list.entries[list.head..];
        if let Ok(pos) = tail.binary_search_by_key(&rank, |&(r, _)| r) {
            if tail[pos].1 != 0 {
                tail[pos].1 = 0;
                list.live -= 1;
                self.resident -= 1;
                Self::maybe_compact(list);
            }
        }
    }

    pub fn compact(&mut self, e: HyperedgeId) {
        if let Some(list) = self.lists[e as usize].as_mut() {
            Self::maybe_compact(list);
        }
    }

    fn maybe_compact(list: &mut NeighborList) {
        let span = list.entries.len() - list.head;
        if span >= 8 && list.live * 2 < span {
            let head = list.head;
            list.entries.drain(..head);
            list.entries.retain(|&(_, od)| od != 0);
            list.head = 0;
        } else if list.live == 0 && span > 0 {
            list.entries.clear();
            list.head = 0;
        }
    }

    #[cfg(test)]
    pub fn resident(&self) -> usize {
        self.resident
    }

    #[cfg(test)]
    pub fn live_entries(&self, e: HyperedgeId) -> Vec<(u32, u32)> {
        match &self.lists[e as usize] {
            Some(list) => list.entries[list.head..]
                .iter()
                .copied()
                .filter(|&(_, od)| od != 0)
                .collect(),
            None => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tombstones_and_prefix_drop() {
        let mut idx = NeighborIndex::new(3);
        assert!(!idx.is_initialized(0));
        idx.init(0, vec![(1, 2), (3, 1), (4, 5)]);
        idx.init(2, vec![(0, 1)]);
        assert_eq!(idx.resident(), 4);
        assert_eq!(idx.peak_list, 3);
        idx.delete_rank(0, 3);
        assert_eq!(idx.live_entries(0), vec![(1, 2), (4, 5)]);
        assert_eq!(idx.advance(0, 1), 2);
        assert_eq!(idx.entry(0, 0), (3, 0));
        assert_eq!(idx.resident(), 2);
        idx.delete_at(0, 1);
        idx.compact(0);
        assert!(idx.live_entries(0).is_empty());
        idx.delete_rank(1, 0);
        assert_eq!(idx.resident(), 1);
        assert_eq!(idx.peak_total, 4);
        assert_eq!(idx.insertions, 4);
    }

    #[test]
    fn compaction_keeps_order() {
        let mut idx = NeighborIndex::new(1);
        idx.init(0, (0..20).map(|r| (r, r + 1)).collect());
        for r in (0..20).filter(|r| r % 3 != 0) {
            idx.delete_rank(0, r);
        }
        let live = idx.live_entries(0);
        assert_eq!(live, (0..20).filter(|r| r % 3 == 0).map(|r| (r, r + 1)).collect::<Vec<_>>());
        idx.delete_rank(0, 9);
        assert_eq!(idx.live_entries(0).len(), 6);
    }
}
