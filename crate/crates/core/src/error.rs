use thiserror::Error;

/// Errors raised by graph construction, distance queries and formula lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("graph is not connected: vertex {0} unreachable from vertex 0")]
    Disconnected(usize),

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("invalid vertex pair ({0}, {1}): the two vertices must differ")]
    InvalidPair(usize, usize),

    #[error("{what} = {value} outside [{lo}, {hi}]")]
    OutOfRange { what: &'static str, value: i64, lo: i64, hi: i64 },

    #[error("outside formula domain: {0}")]
    OutOfDomain(String),

    #[error("no formula record covers {0}")]
    NotCovered(String),

    #[error("inconsistent inputs: {0}")]
    Consistency(String),

    #[error("formula manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },

    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
