use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has {n} vertices, above the configured cap of {cap}")]
    TooManyVertices { n: usize, cap: usize },
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("graph is not bipartite (odd cycle {0:?})")]
    NotBipartite(Vec<usize>),
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("invalid interval [{l}, {r}] for vertex {vertex}")]
    InvalidInterval { vertex: usize, l: i64, r: i64 },
    #[error("box representation must contain at least one interval representation")]
    EmptyBoxRep,
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("parameter k = {0} must be an odd positive integer")]
    InvalidK(i64),
    #[error("k = {k} exceeds the construction guardrail (k < {limit}); pass force to override")]
    GuardrailExceeded { k: u64, limit: u64 },
    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),
    #[error("representation does not realize the graph: pair ({u}, {v}) is {}", if *.in_graph { "an edge of the graph but missing from the representation" } else { "a non-edge of the graph but present in the representation" })]
    RepresentationMismatch { u: usize, v: usize, in_graph: bool },
    #[error("invalid sandwich instance: {0}")]
    InvalidInstance(String),
    #[error("solver cap exceeded: {n} vertices, cap {cap}")]
    SolverCap { n: usize, cap: usize },
    #[error("internal cross-check disagreement: {0}")]
    CrossCheck(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed certificate: {0}")]
    Certificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
