//! Hypergraph storage: dual CSR incidence lists with dense ids.
//!
//! Both directions are kept sorted ascending, so the overlap of two
//! hyperedges is a linear merge and the neighbor set of a hyperedge is a scan
//! over the incidence lists of its members.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{ArgError, ParseError};
use crate::{HyperedgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    edge_offsets: Vec<usize>,
    edge_members: Vec<VertexId>,
    vertex_offsets: Vec<usize>,
    vertex_members: Vec<HyperedgeId>,
    original_ids: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    /// Largest number of hyperedges incident to one vertex.
    pub d: usize,
    /// Largest hyperedge size.
    pub delta: usize,
    pub eta_max: usize,
    pub eta_avg: f64,
    pub incidences: usize,
}

/// Result of [`Hypergraph::compact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactionReport {
    /// Ids (in the input graph) of the removed hyperedges.
    pub removed: Vec<HyperedgeId>,
    /// For every input hyperedge, the id of its keeper in the output graph.
    pub mapping: Vec<HyperedgeId>,
}

impl Hypergraph {
    /// Builds a hypergraph from hyperedges given as lists of arbitrary vertex
    /// tokens. Tokens are remapped to dense ids in first-appearance order and
    /// duplicates inside a hyperedge are dropped.
    pub fn from_token_lists<I, E>(edges: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = u64>,
    {
        let mut remap: HashMap<u64, VertexId> = HashMap::new();
        let mut original_ids = Vec::new();
        let mut dense_edges = Vec::new();
        for (line, edge) in edges.into_iter().enumerate() {
            let mut members = Vec::new();
            for token in edge {
                let next = original_ids.len();
                let id = *remap.entry(token).or_insert_with(|| {
                    original_ids.push(token);
                    next as VertexId
                });
                members.push(id);
            }
            if members.is_empty() {
                return Err(ParseError::EmptyHyperedge { line: line + 1 });
            }
            dense_edges.push(members);
        }
        if original_ids.len() > u32::MAX as usize || dense_edges.len() > u32::MAX as usize {
            return Err(ParseError::TooLarge);
        }
        Ok(Self::from_dense(original_ids, dense_edges))
    }

    /// `edges` must only reference ids below `original_ids.len()`, and every
    /// such id must occur somewhere.
    pub(crate) fn from_dense(original_ids: Vec<u64>, edges: Vec<Vec<VertexId>>) -> Self {
        let n = original_ids.len();
        let mut edge_offsets = Vec::with_capacity(edges.len() + 1);
        let mut edge_members = Vec::new();
        let mut degree = vec![0usize; n];
        edge_offsets.push(0);
        for mut members in edges {
            members.sort_unstable();
            members.dedup();
            for &v in &members {
                degree[v as usize] += 1;
            }
            edge_members.extend_from_slice(&members);
            edge_offsets.push(edge_members.len());
        }

        let mut vertex_offsets = Vec::with_capacity(n + 1);
        vertex_offsets.push(0);
        for d in &degree {
            vertex_offsets.push(vertex_offsets.last().unwrap() + d);
        }
        let mut fill = vertex_offsets[..n].to_vec();
        let mut vertex_members = vec![0; edge_members.len()];
        // Hyperedges are visited in ascending id order, so each vertex list
        // comes out sorted.
        for e in 0..edge_offsets.len() - 1 {
            for &v in &edge_members[edge_offsets[e]..edge_offsets[e + 1]] {
                vertex_members[fill[v as usize]] = e as HyperedgeId;
                fill[v as usize] += 1;
            }
        }
        Self {
            edge_offsets,
            edge_members,
            vertex_offsets,
            vertex_members,
            original_ids,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.original_ids.len()
    }

    pub fn num_hyperedges(&self) -> usize {
        self.edge_offsets.len() - 1
    }

    /// Sorted member vertices of `e`. Panics when `e` is out of range.
    #[inline]
    pub fn members(&self, e: HyperedgeId) -> &[VertexId] {
        let e = e as usize;
        &self.edge_members[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    /// Sorted hyperedges containing `v`. Panics when `v` is out of range.
    #[inline]
    pub fn incident(&self, v: VertexId) -> &[HyperedgeId] {
        let v = v as usize;
        &self.vertex_members[self.vertex_offsets[v]..self.vertex_offsets[v + 1]]
    }

    #[inline]
    pub fn edge_size(&self, e: HyperedgeId) -> u32 {
        let e = e as usize;
        (self.edge_offsets[e + 1] - self.edge_offsets[e]) as u32
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    pub fn original_id(&self, v: VertexId) -> u64 {
        self.original_ids[v as usize]
    }

    /// Dense id of a source-file vertex token.
    pub fn dense_id(&self, token: u64) -> Option<VertexId> {
        self.original_ids
            .iter()
            .position(|&t| t == token)
            .map(|p| p as VertexId)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), ArgError> {
        if (v as usize) < self.num_vertices() {
            Ok(())
        } else {
            Err(ArgError::VertexOutOfRange {
                id: v,
                n: self.num_vertices(),
            })
        }
    }

    pub fn check_hyperedge(&self, e: HyperedgeId) -> Result<(), ArgError> {
        if (e as usize) < self.num_hyperedges() {
            Ok(())
        } else {
            Err(ArgError::HyperedgeOutOfRange {
                id: e,
                m: self.num_hyperedges(),
            })
        }
    }

    pub fn hyperedges(&self) -> impl ExactSizeIterator<Item = HyperedgeId> {
        0..self.num_hyperedges() as HyperedgeId
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        0..self.num_vertices() as VertexId
    }

    /// Overlapping degree `|e_i ∩ e_j|`.
    pub fn overlap_degree(&self, a: HyperedgeId, b: HyperedgeId) -> Result<u32, ArgError> {
        self.check_hyperedge(a)?;
        self.check_hyperedge(b)?;
        Ok(self.overlap_unchecked(a, b))
    }

    #[inline]
    pub(crate) fn overlap_unchecked(&self, a: HyperedgeId, b: HyperedgeId) -> u32 {
        sorted_intersection_len(self.members(a), self.members(b))
    }

    /// Every hyperedge sharing at least one vertex with `e`, paired with the
    /// overlap, in ascending id order. `e` itself is excluded.
    pub fn neighbors(&self, e: HyperedgeId) -> Result<Vec<(HyperedgeId, u32)>, ArgError> {
        self.check_hyperedge(e)?;
        let mut scratch = NeighborScratch::new(self.num_hyperedges());
        let mut out = Vec::new();
        scratch.collect(self, e, &mut out);
        out.sort_unstable_by_key(|&(id, _)| id);
        Ok(out)
    }

    /// Removes exact-duplicate hyperedges, keeping the lowest id of each
    /// group. Vertex ids are unchanged.
    pub fn compact(&self) -> (Hypergraph, CompactionReport) {
        let m = self.num_hyperedges();
        let mut seen: HashMap<&[VertexId], HyperedgeId> = HashMap::with_capacity(m);
        let mut mapping = Vec::with_capacity(m);
        let mut removed = Vec::new();
        let mut kept = Vec::new();
        for e in self.hyperedges() {
            let members = self.members(e);
            match seen.get(members) {
                Some(&keeper) => {
                    mapping.push(keeper);
                    removed.push(e);
                }
                None => {
                    let id = kept.len() as HyperedgeId;
                    seen.insert(members, id);
                    mapping.push(id);
                    kept.push(members.to_vec());
                }
            }
        }
        let graph = if removed.is_empty() {
            self.clone()
        } else {
            Hypergraph::from_dense(self.original_ids.clone(), kept)
        };
        (graph, CompactionReport { removed, mapping })
    }

    pub fn stats(&self) -> GraphStats {
        let n = self.num_vertices();
        let m = self.num_hyperedges();
        let d = self.vertices().map(|v| self.incident(v).len()).max().unwrap_or(0);
        let delta = self
            .hyperedges()
            .map(|e| self.edge_size(e) as usize)
            .max()
            .unwrap_or(0);
        let incidences = self.edge_members.len();
        GraphStats {
            n,
            m,
            d,
            delta,
            eta_max: d,
            eta_avg: if n == 0 { 0.0 } else { incidences as f64 / n as f64 },
            incidences,
        }
    }

    pub fn max_edge_size(&self) -> u32 {
        self.hyperedges().map(|e| self.edge_size(e)).max().unwrap_or(0)
    }
}

/// Reads the line-oriented hyperedge format: one hyperedge per line, vertex
/// tokens are unsigned integers separated by spaces, tabs or commas. Blank
/// lines and lines starting with `#` or `%` are skipped.
pub fn parse_hypergraph<R: BufRead>(reader: R) -> Result<Hypergraph, ParseError> {
    let mut edges: Vec<Vec<u64>> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut edge = Vec::new();
        for token in trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let value = token.parse::<u64>().map_err(|_| ParseError::BadToken {
                line: lineno,
                token: token.to_string(),
            })?;
            edge.push(value);
        }
        if edge.is_empty() {
            return Err(ParseError::EmptyHyperedge { line: lineno });
        }
        edges.push(edge);
    }
    Hypergraph::from_token_lists(edges)
}

pub fn parse_str(text: &str) -> Result<Hypergraph, ParseError> {
    parse_hypergraph(text.as_bytes())
}

/// Writes `h` back in the line format using original vertex tokens.
pub fn write_hypergraph<W: std::io::Write>(h: &Hypergraph, mut out: W) -> std::io::Result<()> {
    for e in h.hyperedges() {
        let mut first = true;
        for &v in h.members(e) {
            if !first {
                out.write_all(b" ")?;
            }
            first = false;
            write!(out, "{}", h.original_id(v))?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[inline]
pub(crate) fn sorted_intersection_len(a: &[u32], b: &[u32]) -> u32 {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Reusable counter for neighbor enumeration.
#[derive(Debug, Clone)]
pub struct NeighborScratch {
    count: Vec<u32>,
    touched: Vec<HyperedgeId>,
}

impl NeighborScratch {
    pub fn new(m: usize) -> Self {
        Self {
            count: vec![0; m],
            touched: Vec::new(),
        }
    }

    /// Appends `(neighbor, overlap)` for every neighbor of `e` to `out`, in
    /// discovery order.
    pub fn collect(&mut self, h: &Hypergraph, e: HyperedgeId, out: &mut Vec<(HyperedgeId, u32)>) {
        for &v in h.members(e) {
            for &f in h.incident(v) {
                if f == e {
                    continue;
                }
                if self.count[f as usize] == 0 {
                    self.touched.push(f);
                }
                self.count[f as usize] += 1;
            }
        }
        for &f in &self.touched {
            out.push((f, self.count[f as usize]));
            self.count[f as usize] = 0;
        }
        self.touched.clear();
    }
}

/// Precomputed `N(e)` with overlaps for every hyperedge.
#[derive(Debug, Clone)]
pub struct NeighborTable {
    offsets: Vec<usize>,
    entries: Vec<(HyperedgeId, u32)>,
}

impl NeighborTable {
    pub fn build(h: &Hypergraph) -> Self {
        let mut scratch = NeighborScratch::new(h.num_hyperedges());
        let mut offsets = vec![0];
        let mut entries = Vec::new();
        for e in h.hyperedges() {
            let start = entries.len();
            scratch.collect(h, e, &mut entries);
            entries[start..].sort_unstable_by_key(|&(id, _)| id);
            offsets.push(entries.len());
        }
        Self { offsets, entries }
    }

    #[inline]
    pub fn get(&self, e: HyperedgeId) -> &[(HyperedgeId, u32)] {
        &self.entries[self.offsets[e as usize]..self.offsets[e as usize + 1]]
    }

    /// `Σ_e |N(e)|`.
    pub fn total_entries(&self) -> usize {
        self.entries.len()
    }
}
