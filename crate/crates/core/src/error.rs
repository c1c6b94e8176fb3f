use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph needs at least 2 vertices and 1 edge")]
    TooSmall,
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("branch count k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("eigensolver failed to converge on a {0}x{0} matrix")]
    ConvergenceFailure(usize),
    #[error("eigenvalue {0} outside [0, 2]")]
    DomainError(f64),
    #[error("multiplicity {count} of eigenvalue {value} is negative")]
    MultiplicityUnderflow { value: f64, count: i64 },
    #[error("spectrum inconsistent with the stated structure: {0}")]
    SpectrumInconsistent(String),
    #[error("kernel of the incidence matrix has dimension {found}, expected {expected}")]
    NumericalRankFailure { expected: usize, found: usize },
    #[error("singular linear system")]
    SingularSystem,
    #[error("eigenvalue {index} of the normalized adjacency is within tolerance of 1")]
    DegenerateEigenvalue { index: usize },
    #[error("vertex reference mismatch: {0}")]
    RefMismatch(String),
    #[error("eigenvalue 0 has multiplicity {0}, expected exactly 1")]
    ZeroMultiplicity(usize),
    #[error("spanning-tree estimate {0} is not close to an integer")]
    RoundingAmbiguity(f64),
    #[error("closed form undefined for k = {k}: {reason}")]
    UnsupportedK { k: usize, reason: &'static str },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
