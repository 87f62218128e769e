use thiserror::Error;

use crate::network::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational (expected p or p/q)")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("vertex {vertex} is not series-reducible: {reason}")]
    NotSeriesReducible { vertex: VertexId, reason: String },

    #[error("fewer than two edges between {0} and {1}; nothing to reduce in parallel")]
    NotParallelReducible(VertexId, VertexId),

    #[error("{0}, {1}, {2} do not form a simple resistor triangle: {3}")]
    NotATriangle(VertexId, VertexId, VertexId, String),

    #[error("network is disconnected")]
    Disconnected,

    #[error("invalid S,T pair: {0}")]
    InvalidPair(String),

    #[error("labeling error: {0}")]
    Labeling(String),

    #[error("exhaustive search for n = {n} needs {count} codes, above the cap of {cap}; raise the cap to proceed")]
    CapExceeded { n: usize, count: u64, cap: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
