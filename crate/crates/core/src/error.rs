use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {vertex} out of range (vertex count {count})")]
    VertexOutOfRange { vertex: VertexId, count: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("invalid path: {upper} is not an ancestor of {lower}")]
    InvalidPath { upper: VertexId, lower: VertexId },
    #[error("level ancestor out of range: {hops} hops above vertex at depth {depth}")]
    AncestorOutOfRange { hops: usize, depth: usize },
    #[error("array {index} is not sorted ascending")]
    Unsorted { index: usize },
    #[error("parent array does not form a tree rooted at the super root (vertex {0})")]
    NotATree(VertexId),
}

pub type Result<T> = std::result::Result<T, Error>;
