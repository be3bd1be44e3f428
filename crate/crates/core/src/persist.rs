//! Binary index files.
//!
//! Little-endian layout:
//!
//! ```text
//! "HLX1"                     magic
//! u32                        version (1)
//! u32 n, u32 m
//! u8                         flavor (0 basic, 1 fast, 2 minimal)
//! m × u32                    rank of each hyperedge
//! n × u64                    original vertex token of each dense id
//! n × (u32 count, count × (u32 hyperedge, u32 s))   rank-ascending labels
//! u64                        FNV-1a of every preceding byte
//! ```

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::error::FormatError;
use crate::label::{Flavor, HlIndex, Label};
use crate::VertexId;

pub const MAGIC: &[u8; 4] = b"HLX1";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFile {
    pub index: HlIndex,
    pub original_ids: Vec<u64>,
}

impl IndexFile {
    pub fn new(index: HlIndex, original_ids: Vec<u64>) -> Self {
        assert_eq!(index.num_vertices(), original_ids.len());
        Self { index, original_ids }
    }

    /// Token → dense id lookup table.
    pub fn id_map(&self) -> HashMap<u64, VertexId> {
        self.original_ids
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i as VertexId))
            .collect()
    }
}

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn to_bytes(file: &IndexFile) -> Vec<u8> {
    let index = &file.index;
    let n = index.num_vertices();
    let m = index.num_hyperedges();
    let mut buf = Vec::with_capacity(21 + 4 * m + 12 * n + 8 * index.total_labels() + 8);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(n as u32).to_le_bytes());
    buf.extend_from_slice(&(m as u32).to_le_bytes());
    buf.push(index.flavor().to_byte());
    for &r in index.ranks() {
        buf.extend_from_slice(&r.to_le_bytes());
    }
    for &t in &file.original_ids {
        buf.extend_from_slice(&t.to_le_bytes());
    }
    for u in 0..n as VertexId {
        let labels = index.labels(u);
        buf.extend_from_slice(&(labels.len() as u32).to_le_bytes());
        for l in labels {
            buf.extend_from_slice(&l.hyperedge.to_le_bytes());
            buf.extend_from_slice(&l.s.to_le_bytes());
        }
    }
    let sum = fnv1a(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    buf
}

pub fn serialize_index<W: Write>(file: &IndexFile, mut sink: W) -> Result<(), FormatError> {
    sink.write_all(&to_bytes(file))?;
    Ok(())
}

pub fn deserialize_index<R: Read>(mut source: R) -> Result<IndexFile, FormatError> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    from_bytes(&bytes)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8], FormatError> {
        let end = self.pos.checked_add(len).ok_or(FormatError::Truncated)?;
        let out = self.bytes.get(self.pos..end).ok_or(FormatError::Truncated)?;
        self.pos = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, FormatError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn from_bytes(bytes: &[u8]) -> Result<IndexFile, FormatError> {
    if bytes.len() < 4 {
        return Err(FormatError::Truncated);
    }
    if &bytes[..4] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    if bytes.len() < 4 + 4 + 8 {
        return Err(FormatError::Truncated);
    }
    let body_len = bytes.len() - 8;
    let stored = u64::from_le_bytes(bytes[body_len..].try_into().unwrap());
    let computed = fnv1a(&bytes[..body_len]);

    let mut cur = Cursor {
        bytes: &bytes[..body_len],
        pos: 4,
    };
    let version = cur.u32()?;
    if version != VERSION {
        return Err(FormatError::Version(version));
    }
    if stored != computed {
        return Err(FormatError::Checksum { stored, computed });
    }
    let n = cur.u32()? as usize;
    let m = cur.u32()? as usize;
    let flavor_byte = cur.u8()?;
    let flavor = Flavor::from_byte(flavor_byte)
        .ok_or_else(|| FormatError::Invalid(format!("unknown flavor byte {flavor_byte}")))?;
    // Bound the allocations by what the file can actually hold.
    if m.saturating_mul(4).saturating_add(n.saturating_mul(12)) > body_len {
        return Err(FormatError::Truncated);
    }
    let ranks = (0..m).map(|_| cur.u32()).collect::<Result<Vec<_>, _>>()?;
    let order = crate::order::HyperedgeOrder::from_ranks(ranks.clone())
        .ok_or_else(|| FormatError::Invalid("rank array is not a permutation".into()))?;
    let original_ids = (0..n).map(|_| cur.u64()).collect::<Result<Vec<_>, _>>()?;
    let mut lists = Vec::with_capacity(n);
    for u in 0..n {
        let count = cur.u32()? as usize;
        if count.saturating_mul(8) > body_len - cur.pos {
            return Err(FormatError::Truncated);
        }
        let mut list = Vec::with_capacity(count);
        for _ in 0..count {
            let hyperedge = cur.u32()?;
            let s = cur.u32()?;
            if hyperedge as usize >= m || s == 0 {
                return Err(FormatError::Invalid(format!("bad label ({hyperedge}, {s}) on vertex {u}")));
            }
            list.push(Label { hyperedge, s });
        }
        if list
            .windows(2)
            .any(|w: &[Label]| order.rank(w[0].hyperedge) >= order.rank(w[1].hyperedge))
        {
            return Err(FormatError::Invalid(format!("labels of vertex {u} are not rank-sorted")));
        }
        lists.push(list);
    }
    if cur.pos != body_len {
        return Err(FormatError::Invalid("trailing bytes before checksum".into()));
    }
    Ok(IndexFile {
        index: HlIndex::from_parts(ranks, lists, flavor),
        original_ids,
    })
}
