use crate::matching::Matching;
use crate::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge {0} is empty")]
    EmptyEdge(usize),

    #[error("vertex {vertex} appears more than once in edge {edge}")]
    DuplicateVertex { edge: usize, vertex: VertexId },

    #[error("edge {edge} has non-positive or non-finite weight {weight}")]
    BadWeight { edge: usize, weight: f64 },

    #[error("length mismatch: {what} has {got} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("vertex {vertex} is out of range for {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("vertex {0} has degree 0 (enable isolated-vertex dropping to renumber it away)")]
    IsolatedVertex(VertexId),

    #[error("too many {what}: {got} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid noise interval [{low}, {high})")]
    BadNoise { low: f64, high: f64 },

    #[error("round cap of {max_rounds} reached with {active_edges} edges still active")]
    RoundCapExceeded {
        max_rounds: usize,
        active_edges: usize,
        partial: Box<Matching>,
    },

    #[error("write conflict in phase '{phase}': cell {cell} written {writes} times")]
    WriteConflict {
        phase: &'static str,
        cell: usize,
        writes: u32,
    },

    #[error("active edge {edge} contains inactive vertex {vertex}")]
    InactiveVertexInActiveEdge { edge: EdgeId, vertex: VertexId },

    #[error("edge id {edge} out of range for {num_edges} edges")]
    InvalidEdgeId { edge: usize, num_edges: usize },

    #[error("optimal matching weight is zero")]
    ZeroOptimum,

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
