use crate::digraph::CycleWitness;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("loop edge ({0},{0}) is not allowed")]
    LoopEdge(u32),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(u32, usize),
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(u32),
    #[error("k = {0} out of range")]
    KOutOfRange(usize),
    #[error("graph has a directed cycle of length {} within the forbidden range", .0.len())]
    NotMFree(CycleWitness),
    #[error("m = {0} is unsupported; the certified bound requires m >= 4")]
    UnsupportedM(usize),
    #[error("no ratio has a positive denominator; graph is acyclic or not trimmed")]
    NoAdmissibleRatio,
    #[error("no admissible candidate; input violates the solver preconditions")]
    NoAdmissibleCandidate,
    #[error("internal bound violation: {0}")]
    InternalBoundViolation(String),
    #[error("graph too large for this operation (n = {0})")]
    TooLarge(usize),
    #[error("bad circulant step {0}")]
    BadStep(u32),
    #[error("bad generator parameters: {0}")]
    BadSizes(String),
}

pub type Result<T> = std::result::Result<T, Error>;
