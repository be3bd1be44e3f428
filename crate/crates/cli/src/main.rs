use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use hlx_core::harness::{self, BenchConfig, SuiteConfig};
use hlx_core::persist::{self, MAGIC};
use hlx_core::{
    build_basic_with_stats, build_fast, generate_random, minimize, parse_hypergraph, run_query,
    write_hypergraph, Flavor, GenConfig, HlIndex, Hypergraph, HyperedgeOrder, IndexFile,
    QueryRequest, VertexId,
};

#[derive(Parser)]
#[command(name = "hlx", version, about = "Max-reachability queries on hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a hypergraph file.
    Build {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "minimal")]
        method: Flavor,
        /// Keep exact-duplicate hyperedges.
        #[arg(long)]
        no_compact: bool,
        /// Print construction statistics as JSON.
        #[arg(long)]
        stats: bool,
    },
    /// Answer MR(u, v), or u ⇝ˢ v with --s.
    Query {
        index: PathBuf,
        u: u64,
        v: u64,
        #[arg(long)]
        s: Option<u32>,
    },
    /// Answer every "u v" or "u v s" line of a pairs file.
    Batch {
        index: PathBuf,
        pairs: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// 0 uses every core.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Time construction and queries on a hypergraph.
    Bench {
        graph: PathBuf,
        #[arg(long, default_value_t = 1000)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "online,online-pre,index")]
        methods: Vec<String>,
        /// Skip the basic construction, which is slow on large graphs.
        #[arg(long)]
        skip_basic: bool,
    },
    /// Write a random hypergraph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 0.5)]
        bias: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every engine against the oracle on random hypergraphs.
    Verify {
        #[arg(long, default_value_t = 200)]
        graphs: usize,
        #[arg(long, default_value_t = 60)]
        max_n: usize,
        #[arg(long, default_value_t = 120)]
        max_m: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Summarize a hypergraph or index file.
    Stats { path: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_graph(path: &Path) -> Result<Hypergraph> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    parse_hypergraph(BufReader::new(file)).with_context(|| format!("cannot parse {}", path.display()))
}

fn read_index(path: &Path) -> Result<IndexFile> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    persist::deserialize_index(BufReader::new(file)).with_context(|| format!("cannot load {}", path.display()))
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    })
}

fn dense(ids: &HashMap<u64, VertexId>, token: u64) -> Result<VertexId> {
    ids.get(&token).copied().ok_or_else(|| anyhow!("unknown vertex id {token}"))
}

fn build(graph: &Path, out: &Path, method: Flavor, no_compact: bool, stats: bool) -> Result<()> {
    let mut h = read_graph(graph)?;
    let mut removed = 0;
    if !no_compact {
        let (compacted, report) = h.compact();
        removed = report.removed.len();
        h = compacted;
    }
    let order = HyperedgeOrder::compute(&h);
    let (index, report) = match method {
        Flavor::Basic => {
            let (index, s) = build_basic_with_stats(&h, &order);
            (index, serde_json::json!({ "construction": s }))
        }
        Flavor::Fast => {
            let built = build_fast(&h, &order);
            (built.index, serde_json::json!({ "construction": built.stats }))
        }
        Flavor::Minimal => {
            let built = build_fast(&h, &order);
            let (index, m) = minimize(&built.index, &built.dual, &order)?;
            (index, serde_json::json!({ "construction": built.stats, "minimize": m }))
        }
    };
    let file = IndexFile::new(index, h.original_ids().to_vec());
    let sink = File::create(out).with_context(|| format!("cannot create {}", out.display()))?;
    let mut sink = BufWriter::new(sink);
    persist::serialize_index(&file, &mut sink)?;
    sink.flush()?;
    if stats {
        let mut report = report;
        report["graph"] = serde_json::to_value(h.stats())?;
        report["removed_duplicates"] = removed.into();
        report["labels"] = file.index.total_labels().into();
        println!("{}", serde_json::to_string_pretty(&report)?);
    }
    Ok(())
}

fn parse_pairs(path: &Path, ids: &HashMap<u64, VertexId>) -> Result<Vec<QueryRequest>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut requests = Vec::new();
    for (no, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.is_empty() || fields[0].starts_with('#') {
            continue;
        }
        let ctx = || format!("{}:{}", path.display(), no + 1);
        let num = |s: &str| s.parse::<u64>().with_context(|| format!("{}: bad number {s:?}", ctx()));
        let (u, v, s) = match fields.as_slice() {
            [u, v] => (num(u)?, num(v)?, None),
            [u, v, s] => (num(u)?, num(v)?, Some(u32::try_from(num(s)?).with_context(ctx)?)),
            _ => bail!("{}: expected \"u v\" or \"u v s\"", ctx()),
        };
        requests.push(QueryRequest {
            u: dense(ids, u).with_context(ctx)?,
            v: dense(ids, v).with_context(ctx)?,
            s,
        });
    }
    Ok(requests)
}

fn stats(path: &Path) -> Result<()> {
    let mut head = [0u8; 4];
    let is_index = {
        let mut f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
        std::io::Read::read(&mut f, &mut head)? == 4 && &head == MAGIC
    };
    let value = if is_index {
        let file = read_index(path)?;
        let idx: &HlIndex = &file.index;
        serde_json::json!({
            "kind": "index",
            "flavor": idx.flavor().name(),
            "n": idx.num_vertices(),
            "m": idx.num_hyperedges(),
            "labels": idx.total_labels(),
            "max_labels_per_vertex": idx.max_labels_per_vertex(),
            "bytes": std::fs::metadata(path)?.len(),
        })
    } else {
        let h = read_graph(path)?;
        let mut v = serde_json::to_value(h.stats())?;
        v["kind"] = "hypergraph".into();
        v
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { graph, output, method, no_compact, stats } => {
            build(&graph, &output, method, no_compact, stats)?;
        }
        Command::Query { index, u, v, s } => {
            let file = read_index(&index)?;
            let ids = file.id_map();
            let req = QueryRequest { u: dense(&ids, u)?, v: dense(&ids, v)?, s };
            println!("{}", run_query(&file.index, req)?.value);
        }
        Command::Batch { index, pairs, output: out, threads } => {
            let file = read_index(&index)?;
            let requests = parse_pairs(&pairs, &file.id_map())?;
            let results = hlx_core::batch_query(&file.index, &requests, threads);
            let mut sink = output(out.as_deref())?;
            for r in results {
                writeln!(sink, "{}", r?.value)?;
            }
            sink.flush()?;
        }
        Command::Bench { graph, queries, seed, methods, skip_basic } => {
            for m in &methods {
                if !matches!(m.as_str(), "online" | "online-pre" | "index") {
                    bail!("unknown bench method {m:?}");
                }
            }
            let h = read_graph(&graph)?.compact().0;
            let cfg = BenchConfig {
                queries,
                seed,
                basic: !skip_basic,
                online: methods.iter().any(|m| m == "online"),
                online_precomputed: methods.iter().any(|m| m == "online-pre"),
            };
            let report = harness::bench(&h, &cfg);
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Gen { n, m, max_size, bias, seed, output: out } => {
            let cfg = GenConfig { n, m, max_size, overlap_bias: bias, seed };
            let h = generate_random(&cfg)?;
            let mut sink = output(Some(&out))?;
            write_hypergraph(&h, &mut sink)?;
            sink.flush()?;
        }
        Command::Verify { graphs, max_n, max_m, max_size, seed } => {
            if max_n == 0 || max_m == 0 || max_size == 0 {
                bail!("--max-n, --max-m and --max-size must be positive");
            }
            let report = harness::verify_suite(&SuiteConfig { graphs, max_n, max_m, max_size, seed });
            println!(
                "{} graphs, {} pairs, {} engines, {} mismatches",
                report.graphs,
                report.pairs,
                harness::ENGINES.len(),
                report.disagreements.len()
            );
            for d in report.disagreements.iter().take(20) {
                println!(
                    "graph {} {}: ({}, {}) got {} want {}",
                    d.graph, d.engine, d.u, d.v, d.got, d.want
                );
            }
            if !report.passed() {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Stats { path } => stats(&path)?,
    }
    Ok(ExitCode::SUCCESS)
}
