use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),
    #[error("ordering is not a weighted elimination ordering")]
    NotWeo,
    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("matrix is not lower triangular (entry ({0}, {1}) is nonzero)")]
    NotLowerTriangular(usize, usize),
    #[error("lattice guard exceeded: {what} = {value} > {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("flat is not an element of the intersection lattice")]
    FlatNotInLattice,
    #[error("hyperplane index {0} out of range")]
    InvalidHyperplane(usize),
    #[error("graph is not complete")]
    NotComplete,
    #[error("addition-deletion audit inconclusive: {0}")]
    AuditInconclusive(String),
    #[error("linear form is identically zero")]
    ZeroForm,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("certificate verification failed: {0}")]
    Verification(String),
}
