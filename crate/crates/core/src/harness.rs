//! Cross-engine verification and timing.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{build_basic_with_stats, build_fast, ConstructionStats};
use crate::generate::{generate_random, GenConfig};
use crate::hypergraph::{GraphStats, Hypergraph, NeighborTable};
use crate::label::HlIndex;
use crate::minimize::minimize;
use crate::online::{NeighborMode, OnlineSearcher, SearchConfig};
use crate::oracle::OracleTables;
use crate::order::HyperedgeOrder;
use crate::persist::{to_bytes, IndexFile};
use crate::query::mr_query;
use crate::VertexId;

pub const ENGINES: [&str; 5] = ["online", "online-pre", "basic", "fast", "minimal"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub graph: usize,
    pub engine: &'static str,
    pub u: VertexId,
    pub v: VertexId,
    pub got: u32,
    pub want: u32,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub graphs: usize,
    pub pairs: usize,
    pub disagreements: Vec<Disagreement>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Every engine's answer on every vertex pair of `h`, compared against the
/// oracle. Returns the number of pairs checked.
pub fn verify_graph(h: &Hypergraph, graph: usize, out: &mut Vec<Disagreement>) -> usize {
    let oracle = OracleTables::compute(h);
    let order = HyperedgeOrder::compute(h);
    let (basic, _) = build_basic_with_stats(h, &order);
    let fast = build_fast(h, &order);
    let minimal = match minimize(&fast.index, &fast.dual, &order) {
        Ok((idx, _)) => idx,
        Err(_) => {
            out.push(Disagreement { graph, engine: "minimal", u: 0, v: 0, got: 0, want: 0 });
            fast.index.clone()
        }
    };
    let mut plain = OnlineSearcher::new(h, SearchConfig::default());
    let mut pre = OnlineSearcher::new(
        h,
        SearchConfig { neighbor_mode: NeighborMode::Precomputed, early_global_cutoff: true },
    );
    let indexes: [(&'static str, &HlIndex); 3] =
        [("basic", &basic), ("fast", &fast.index), ("minimal", &minimal)];
    let n = h.num_vertices() as VertexId;
    let mut pairs = 0;
    for u in 0..n {
        for v in u..n {
            pairs += 1;
            let want = oracle.mr(u, v);
            let mut check = |engine: &'static str, got: u32| {
                if got != want {
                    out.push(Disagreement { graph, engine, u, v, got, want });
                }
            };
            check("online", plain.mr(u, v).unwrap_or(u32::MAX));
            check("online-pre", pre.mr(u, v).unwrap_or(u32::MAX));
            for (name, idx) in indexes {
                check(name, mr_query(idx, u, v).ok().and_then(|r| r.mr()).unwrap_or(u32::MAX));
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub graphs: usize,
    pub max_n: usize,
    pub max_m: usize,
    pub max_size: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { graphs: 200, max_n: 60, max_m: 120, max_size: 8, seed: 0 }
    }
}

/// Random generator settings for the `i`-th suite graph. Bias cycles through
/// 0, 0.3, 0.6 and 0.9.
pub fn suite_graph_config(cfg: &SuiteConfig, i: usize) -> GenConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let min_n = 5.min(cfg.max_n).max(1);
    let n = rng.gen_range(min_n..=cfg.max_n.max(min_n));
    let m = rng.gen_range(5.min(cfg.max_m).max(1)..=cfg.max_m.max(1));
    GenConfig {
        n,
        m,
        max_size: cfg.max_size.min(n).max(1),
        overlap_bias: [0.0, 0.3, 0.6, 0.9][i % 4],
        seed: rng.gen(),
    }
}

pub fn verify_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::default();
    for i in 0..cfg.graphs {
        let h = generate_random(&suite_graph_config(cfg, i)).expect("suite config is valid");
        report.pairs += verify_graph(&h, i, &mut report.disagreements);
        report.graphs += 1;
    }
    report
}

#[derive(Debug, Clone, Copy)]
pub struct BenchConfig {
    pub queries: usize,
    pub seed: u64,
    pub basic: bool,
    pub online: bool,
    pub online_precomputed: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { queries: 1000, seed: 0, basic: true, online: true, online_precomputed: true }
    }
}

/// Per-query latency in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Latency {
    pub mean: f64,
    pub p50: f64,
    pub p99: f64,
    pub max: f64,
}

impl Latency {
    fn from_samples(mut ns: Vec<f64>) -> Self {
        if ns.is_empty() {
            return Self { mean: 0.0, p50: 0.0, p99: 0.0, max: 0.0 };
        }
        ns.sort_by(f64::total_cmp);
        let at = |q: f64| ns[((ns.len() - 1) as f64 * q).round() as usize];
        Self {
            mean: ns.iter().sum::<f64>() / ns.len() as f64,
            p50: at(0.5),
            p99: at(0.99),
            max: ns[ns.len() - 1],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub graph: GraphStats,
    pub basic: Option<ConstructionStats>,
    pub fast: ConstructionStats,
    #[serde(with = "crate::construct::duration_secs")]
    pub minimize_time: Duration,
    pub labels_fast: usize,
    pub labels_minimal: usize,
    pub index_bytes: usize,
    /// `Σ |N(e)|`, what a fully materialized neighbor table would hold.
    pub neighbor_table_entries: usize,
    pub queries: usize,
    pub online: Option<Latency>,
    pub online_precomputed: Option<Latency>,
    pub index: Latency,
    pub speedup_vs_online: Option<f64>,
    pub speedup_vs_precomputed: Option<f64>,
}

pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if n == 0 {
        return Vec::new();
    }
    (0..count)
        .map(|_| (rng.gen_range(0..n as VertexId), rng.gen_range(0..n as VertexId)))
        .collect()
}

fn time_online(h: &Hypergraph, mode: NeighborMode, pairs: &[(VertexId, VertexId)], want: &[u32]) -> Latency {
    let mut searcher = OnlineSearcher::new(h, SearchConfig { neighbor_mode: mode, early_global_cutoff: true });
    let samples = pairs
        .iter()
        .zip(want)
        .map(|(&(u, v), &w)| {
            let start = Instant::now();
            let got = searcher.mr(u, v).expect("valid pair");
            let ns = start.elapsed().as_nanos() as f64;
            assert_eq!(got, w, "online and index disagree on ({u}, {v})");
            ns
        })
        .collect();
    Latency::from_samples(samples)
}

/// Each pair is repeated so that clock overhead does not dominate.
fn time_index(index: &HlIndex, pairs: &[(VertexId, VertexId)]) -> Latency {
    const REPS: u32 = 16;
    let samples = pairs
        .iter()
        .map(|&(u, v)| {
            let start = Instant::now();
            for _ in 0..REPS {
                std::hint::black_box(mr_query(index, std::hint::black_box(u), v).ok());
            }
            start.elapsed().as_nanos() as f64 / f64::from(REPS)
        })
        .collect();
    Latency::from_samples(samples)
}

/// Builds every index on `h`, then times the same random pairs on each
/// engine, one thread at a time. Online answers are checked against the
/// index.
pub fn bench(h: &Hypergraph, cfg: &BenchConfig) -> BenchReport {
    let order = HyperedgeOrder::compute(h);
    let basic = cfg.basic.then(|| build_basic_with_stats(h, &order).1);
    let fast = build_fast(h, &order);
    let start = Instant::now();
    let (minimal, _) = minimize(&fast.index, &fast.dual, &order).expect("fresh build is consistent");
    let minimize_time = start.elapsed();
    let index_bytes = to_bytes(&IndexFile::new(minimal.clone(), h.original_ids().to_vec())).len();
    let neighbor_table_entries = NeighborTable::build(h).total_entries();

    let pairs = random_pairs(h.num_vertices(), cfg.queries, cfg.seed);
    let want: Vec<u32> = pairs
        .iter()
        .map(|&(u, v)| mr_query(&minimal, u, v).ok().and_then(|r| r.mr()).unwrap_or(0))
        .collect();
    let index = time_index(&minimal, &pairs);
    let online = cfg.online.then(|| time_online(h, NeighborMode::OnTheFly, &pairs, &want));
    let online_precomputed =
        cfg.online_precomputed.then(|| time_online(h, NeighborMode::Precomputed, &pairs, &want));
    let ratio = |x: Option<Latency>| x.map(|l| l.mean / index.mean.max(1e-3));
    BenchReport {
        graph: h.stats(),
        basic,
        labels_fast: fast.index.total_labels(),
        fast: fast.stats,
        minimize_time,
        labels_minimal: minimal.total_labels(),
        index_bytes,
        neighbor_table_entries,
        queries: pairs.len(),
        speedup_vs_online: ratio(online),
        speedup_vs_precomputed: ratio(online_precomputed),
        online,
        online_precomputed,
        index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture;

    #[test]
    fn fixture_agrees_everywhere() {
        let mut out = Vec::new();
        let pairs = verify_graph(&fixture::hypergraph(), 0, &mut out);
        assert_eq!(pairs, 78);
        assert!(out.is_empty(), "{out:?}");
    }

    #[test]
    fn small_suite_passes() {
        let report = verify_suite(&SuiteConfig { graphs: 12, max_n: 20, max_m: 30, max_size: 5, seed: 3 });
        assert_eq!(report.graphs, 12);
        assert!(report.passed(), "{:?}", report.disagreements);
    }

    #[test]
    fn bench_on_fixture() {
        let r = bench(&fixture::hypergraph(), &BenchConfig { queries: 50, ..Default::default() });
        assert_eq!(r.queries, 50);
        assert!(r.labels_minimal <= r.labels_fast);
        assert!(r.fast.neighbor_peak_total <= r.neighbor_table_entries);
    }
}
