//! Two-cursor merge over rank-sorted label lists.

use rayon::prelude::*;

use crate::error::ArgError;
use crate::label::{HlIndex, Label};
use crate::{HyperedgeId, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryValue {
    Mr(u32),
    Reach(bool),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryResult {
    pub value: QueryValue,
    pub labels_scanned: usize,
}

impl QueryResult {
    pub fn mr(&self) -> Option<u32> {
        match self.value {
            QueryValue::Mr(k) => Some(k),
            QueryValue::Reach(_) => None,
        }
    }

    pub fn reachable(&self) -> Option<bool> {
        match self.value {
            QueryValue::Reach(b) => Some(b),
            QueryValue::Mr(_) => None,
        }
    }
}

impl std::fmt::Display for QueryValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QueryValue::Mr(k) => write!(f, "{k}"),
            QueryValue::Reach(b) => write!(f, "{b}"),
        }
    }
}

/// One entry of a batch: `s = None` asks for `MR(u, v)`, `Some(s)` for
/// `u ⇝ˢ v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueryRequest {
    pub u: VertexId,
    pub v: VertexId,
    pub s: Option<u32>,
}

pub(crate) struct Merge {
    pub k: u32,
    pub scanned: usize,
    pub hit: bool,
}

/// Core merge. With `stop_at_first` the scan ends at the first common hub
/// whose two values both exceed `k`.
pub(crate) fn merge<R>(lu: &[Label], lv: &[Label], rank: R, mut k: u32, stop_at_first: bool) -> Merge
where
    R: Fn(HyperedgeId) -> u32,
{
    let (mut i, mut j) = (0, 0);
    while i < lu.len() && j < lv.len() {
        let (a, b) = (lu[i], lv[j]);
        let (ra, rb) = (rank(a.hyperedge), rank(b.hyperedge));
        if a.s <= k || ra < rb {
            i += 1;
        } else if b.s <= k || ra > rb {
            j += 1;
        } else {
            k = a.s.min(b.s);
            i += 1;
            j += 1;
            if stop_at_first {
                return Merge { k, scanned: i + j, hit: true };
            }
        }
    }
    Merge { k, scanned: i + j, hit: false }
}

fn check(index: &HlIndex, u: VertexId, v: VertexId) -> Result<(), ArgError> {
    let n = index.num_vertices();
    for id in [u, v] {
        if id as usize >= n {
            return Err(ArgError::VertexOutOfRange { id, n });
        }
    }
    Ok(())
}

pub fn mr_query(index: &HlIndex, u: VertexId, v: VertexId) -> Result<QueryResult, ArgError> {
    check(index, u, v)?;
    let m = merge(index.labels(u), index.labels(v), |e| index.rank(e), 0, false);
    Ok(QueryResult {
        value: QueryValue::Mr(m.k),
        labels_scanned: m.scanned,
    })
}

pub fn s_reach_query(index: &HlIndex, u: VertexId, v: VertexId, s: u32) -> Result<QueryResult, ArgError> {
    if s < 1 {
        return Err(ArgError::ZeroThreshold);
    }
    check(index, u, v)?;
    let m = merge(index.labels(u), index.labels(v), |e| index.rank(e), s - 1, true);
    Ok(QueryResult {
        value: QueryValue::Reach(m.hit),
        labels_scanned: m.scanned,
    })
}

/// `MR(u, v)` as the maximum over every common hub, without any skipping.
pub fn mr_query_exhaustive(index: &HlIndex, u: VertexId, v: VertexId) -> Result<u32, ArgError> {
    check(index, u, v)?;
    let lv = index.labels(v);
    Ok(index
        .labels(u)
        .iter()
        .filter_map(|a| lv.iter().find(|b| b.hyperedge == a.hyperedge).map(|b| a.s.min(b.s)))
        .max()
        .unwrap_or(0))
}

pub fn run_query(index: &HlIndex, req: QueryRequest) -> Result<QueryResult, ArgError> {
    match req.s {
        None => mr_query(index, req.u, req.v),
        Some(s) => s_reach_query(index, req.u, req.v, s),
    }
}

/// Answers every request, keeping positions; a bad request only fails its
/// own slot. `threads = 0` uses the global rayon pool, 1 runs serially.
pub fn batch_query(
    index: &HlIndex,
    requests: &[QueryRequest],
    threads: usize,
) -> Vec<Result<QueryResult, ArgError>> {
    if threads == 1 || requests.len() < 2 {
        return requests.iter().map(|&r| run_query(index, r)).collect();
    }
    let run = || requests.par_iter().map(|&r| run_query(index, r)).collect();
    if threads == 0 {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => requests.iter().map(|&r| run_query(index, r)).collect(),
        }
    }
}
