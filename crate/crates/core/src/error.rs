use alloc::string::String;

use crate::digraph::Vertex;

/// Errors raised on invalid input to the library operations.
///
/// Solver outcomes that are not input errors (hypothesis failures, stage
/// failures) are carried in [`crate::SolveReport`] instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(Vertex, Vertex),
    #[error("vertex {vertex} out of range (order {order})")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("vertex {0} is deleted")]
    DeletedVertex(Vertex),
    #[error("vertex {0} occurs in two parts")]
    PartOverlap(Vertex),
    #[error("outer digraph has {outer} vertices but {parts} parts were given")]
    ArityMismatch { outer: usize, parts: usize },
    #[error("parts do not partition the vertex set (vertex {0})")]
    NotAPartition(Vertex),
    #[error("digraph is not semicomplete: {0} and {1} are non-adjacent")]
    NotSemicomplete(Vertex, Vertex),
    #[error("digraph is not a tournament: pair ({0}, {1})")]
    NotTournament(Vertex, Vertex),
    #[error("digraph is not strong")]
    NotStrong,
    #[error("digraph is not {l}-quasi-transitive: witness pair ({u}, {v})")]
    NotLQuasiTransitive { l: usize, u: Vertex, v: Vertex },
    #[error("circulant tournaments need an odd order, got {0}")]
    EvenOrder(usize),
    #[error("k = {0} is too small for this construction")]
    KTooSmall(usize),
    #[error("core digraph is not strong")]
    CoreNotStrong,
    #[error("core digraph is 2-linked, no obstruction to embed")]
    CoreIsLinked,
    #[error("vertex {0} lies in more than one of the given sets")]
    SetOverlap(Vertex),
    #[error("sets have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("the two vertices coincide ({0})")]
    SameVertex(Vertex),
    #[error("need at least {needed} vertices, have {available}")]
    TooFewVertices { needed: usize, available: usize },
    #[error("vertex {0} belongs to U")]
    VertexInU(Vertex),
    #[error("terminal vertex {0} used twice")]
    RepeatedTerminal(Vertex),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search budget of {0} expansions exhausted")]
    BudgetExceeded(u64),
}
