//! Hub-label construction.
//!
//! Hyperedges are processed from most to least important. Each one runs a
//! best-first traversal that only enters less important hyperedges, and
//! every vertex reached for the first time in that traversal receives a
//! label for the source hyperedge. Two strategies decide which traversal
//! branches are redundant:
//!
//! * [`build_basic`] asks, at every pop, whether a more important hyperedge
//!   already connects source and current hyperedge at the same level, using
//!   a bidirectional BFS ([`is_covered_online`]).
//! * [`build_fast`] keeps a running maximum cover degree per hyperedge and a
//!   lazily built, shrinking neighbor index; a branch is dropped when its
//!   overlap does not exceed the source's cover degree.

mod basic;
mod fast;
mod neighbor_index;

use std::time::Duration;

pub use basic::{build_basic, build_basic_with_stats, is_covered_online};
pub use fast::{build_fast, FastBuild};

#[derive(Debug, Clone, Default, PartialEq, serde::Serialize)]
pub struct ConstructionStats {
    /// Total labels `l = Σ_u |L(u)|`.
    pub labels: usize,
    pub queue_pushes: u64,
    pub queue_pops: u64,
    /// Most neighbor-index entries resident at once, over all hyperedges.
    pub neighbor_peak_total: usize,
    /// Largest single neighbor list ever resident (`α_e`).
    pub neighbor_peak_list: usize,
    /// Entries ever inserted into the neighbor index (`α`).
    pub neighbor_insertions: usize,
    /// Sources skipped because their cover degree equals their size.
    pub skipped_sources: usize,
    /// Cover checks that ran the BFS (basic construction only).
    pub cover_searches: u64,
    /// Cover checks answered by the partial-index pre-filter.
    pub cover_prefiltered: u64,
    pub pops_covered: u64,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
}

pub(crate) mod duration_secs {
    pub fn serialize<S: serde::Serializer>(d: &std::time::Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }
}

/// Max-heap entry: larger `s` first, then more important (smaller rank).
pub(crate) type QueueItem = (u32, std::cmp::Reverse<u32>);
