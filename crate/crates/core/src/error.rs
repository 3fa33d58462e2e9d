//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by graph construction, instance generation, solvers and
/// the analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid size: L must be >= 1")]
    InvalidGridSize,

    #[error("vertex id {id} out of range (< {limit} required)")]
    VertexOutOfRange { id: u32, limit: u32 },

    #[error("vertex {0} is broken or absent from the graph")]
    BrokenVertex(u32),

    #[error("subgraph size {requested} exceeds parent size {parent}")]
    SubgraphTooLarge { requested: u32, parent: u32 },

    #[error("graph is disconnected on its non-broken vertices")]
    Disconnected,

    #[error("no loop of length >= {min_len} found after {attempts} attempts")]
    LoopRetryExhausted { min_len: usize, attempts: usize },

    #[error("min_len must be even and >= 4, got {0}")]
    InvalidMinLen(usize),

    #[error("clause density alpha={alpha} yields M=0 clauses on N={n} vertices")]
    EmptyInstance { alpha: String, n: usize },

    #[error("all raw couplings cancelled to zero; instance rejected")]
    AllCouplingsZero,

    #[error("spin configuration domain does not match the graph")]
    DomainMismatch,

    #[error("invalid solver parameters: {0}")]
    InvalidParams(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("clause length {len} exceeds enumeration guard {max}")]
    ClauseTooLong { len: usize, max: usize },

    #[error("constraint table scope width {0} exceeds 63 variables")]
    ScopeTooWide(usize),

    #[error("intermediate table would exceed the row budget of {budget} rows")]
    MemoryGuard { budget: usize },

    #[error("brute-force oracle limited to {max} participating spins, instance has {got}")]
    OracleTooLarge { got: usize, max: usize },

    #[error("invalid statistic input: {0}")]
    InvalidStatistic(String),

    #[error("parse error in {what}: {detail}")]
    Parse { what: String, detail: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn parse(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Parse { what: what.into(), detail: detail.into() }
    }
}
