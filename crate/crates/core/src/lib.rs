//! Max-reachability on hypergraphs.
//!
//! Two vertices are `s`-reachable when a walk of hyperedges joins them with
//! every consecutive pair sharing at least `s` vertices. The largest such `s`
//! is their max-reachability. This crate answers that with an online
//! bidirectional search or with a hub-labeling index that stores, for every
//! vertex, a few `(hyperedge, level)` pairs.
//!
//! ```
//! use hlx_core::{fixture, HyperedgeOrder, build_fast, minimize, mr_query};
//!
//! let h = fixture::hypergraph();
//! let order = HyperedgeOrder::compute(&h);
//! let fast = build_fast(&h, &order);
//! let (index, _) = minimize(&fast.index, &fast.dual, &order).unwrap();
//! let mr = mr_query(&index, fixture::vertex(6), fixture::vertex(9)).unwrap();
//! assert_eq!(mr.mr(), Some(2));
//! ```

pub type VertexId = u32;
pub type HyperedgeId = u32;

pub mod construct;
pub mod error;
pub mod fixture;
pub mod generate;
pub mod harness;
pub mod hypergraph;
pub mod label;
pub mod minimize;
pub mod online;
pub mod oracle;
pub mod order;
pub mod persist;
pub mod query;
pub mod union_find;

pub use construct::{build_basic, build_basic_with_stats, build_fast, ConstructionStats, FastBuild};
pub use error::{ArgError, FormatError, IntegrityError, ParseError};
pub use generate::{generate_random, GenConfig};
pub use hypergraph::{parse_hypergraph, parse_str, write_hypergraph, GraphStats, Hypergraph};
pub use label::{DualIndex, Flavor, HlIndex, Label};
pub use minimize::{minimize, verify_completeness, verify_necessity, MinimizeStats};
pub use online::{mr_online, NeighborMode, OnlineSearcher, SearchConfig};
pub use oracle::{mr_oracle, s_reach_oracle, vte_oracle, OracleTables};
pub use order::HyperedgeOrder;
pub use persist::{deserialize_index, serialize_index, IndexFile};
pub use query::{batch_query, mr_query, run_query, s_reach_query, QueryRequest, QueryResult, QueryValue};
