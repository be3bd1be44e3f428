use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: malformed vertex token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: hyperedge has no vertices")]
    EmptyHyperedge { line: usize },
    #[error("too many vertices or hyperedges for 32-bit ids")]
    TooLarge,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArgError {
    #[error("vertex {id} out of range (n = {n})")]
    VertexOutOfRange { id: u32, n: usize },
    #[error("hyperedge {id} out of range (m = {m})")]
    HyperedgeOutOfRange { id: u32, m: usize },
    #[error("reachability threshold must be at least 1")]
    ZeroThreshold,
    #[error("walk is empty")]
    EmptyWalk,
    #[error("walk steps from hyperedge {from} to {to}, which share no vertex")]
    InvalidWalk { from: u32, to: u32 },
    #[error("{0}")]
    Config(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntegrityError {
    #[error("label ({hyperedge}, {s}) of vertex {vertex} has no matching dual entry")]
    MissingDual { vertex: u32, hyperedge: u32, s: u32 },
    #[error("dual index holds {dual} entries but the label index holds {labels}")]
    SizeMismatch { dual: usize, labels: usize },
    #[error("dual list of hyperedge {0} is not sorted by non-ascending s")]
    UnsortedDual(u32),
    #[error("index and dual disagree on shape")]
    Shape,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported index format version {0}")]
    Version(u32),
    #[error("checksum mismatch (stored {stored:#018x}, computed {computed:#018x})")]
    Checksum { stored: u64, computed: u64 },
    #[error("truncated index file")]
    Truncated,
    #[error("invalid index contents: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
