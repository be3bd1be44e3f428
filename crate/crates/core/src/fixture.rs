//! The seven-hyperedge, twelve-vertex co-authorship example used throughout
//! the tests. Hyperedge `e_i` is line `i` of [`TEXT`]; vertex `v_i` is token
//! `i`.

use crate::hypergraph::{parse_str, Hypergraph};
use crate::{HyperedgeId, VertexId};

pub const TEXT: &str = "\
1 2
3 4 5 6 7 8
9 10 12
3 4 11 12
5 6 10
7 8 9
1 3 4
";

pub fn hypergraph() -> Hypergraph {
    parse_str(TEXT).expect("fixture parses")
}

/// Dense id of hyperedge `e_i` (1-based, as in the example).
pub fn edge(i: u32) -> HyperedgeId {
    assert!((1..=7).contains(&i));
    i - 1
}

/// Dense id of vertex `v_i` (1-based token).
pub fn vertex(i: u64) -> VertexId {
    // First-appearance order of the tokens in TEXT.
    const ORDER: [u64; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 11];
    ORDER.iter().position(|&t| t == i).expect("vertex token 1..=12") as VertexId
}
