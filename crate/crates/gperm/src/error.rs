//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {vertex} (edge {edge})")]
    SelfLoop { edge: usize, vertex: usize },

    #[error("vertex index {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph is not regular of even degree: {msg}")]
    NotRegular { msg: String },

    #[error("vertex {vertex} has odd degree {degree}; no Eulerian circuit")]
    OddDegree { vertex: usize, degree: usize },

    #[error("|E| = {edges} is not a positive integer multiple of |V|-1 = {vertices_minus_one}")]
    Unbalanced {
        edges: usize,
        vertices_minus_one: usize,
    },

    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix side {side} exceeds the supported bound {max}")]
    SideTooLarge { side: usize, max: usize },

    #[error("search space bound exceeded: {msg}")]
    SearchBound { msg: String },

    #[error("integer overflow in exact permanent accumulation")]
    Overflow,

    #[error("not a valid cut: {msg}")]
    NotACut { msg: String },

    #[error("rotation system is not a sphere embedding: V-E+F = {euler}, expected 2")]
    NotSpherical { euler: i64 },

    #[error("edge {edge} borders the same face on both sides; the dual would contain a loop")]
    DualLoop { edge: usize },

    #[error("edge set is not a spanning tree: {msg}")]
    NotSpanningTree { msg: String },

    #[error("operation requires a simple graph, found parallel edges")]
    NotSimple,

    #[error("invalid argument: {msg}")]
    InvalidArgument { msg: String },

    #[error("fixture error: {msg}")]
    Fixture { msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("internal error: {msg}")]
    Internal { msg: String },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Internal {
            msg: format!("json: {e}"),
        }
    }
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument { msg: msg.into() }
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal { msg: msg.into() }
    }
}
