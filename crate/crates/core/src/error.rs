use thiserror::Error;

/// Errors produced by graph construction, the count engine and the matrix engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("edge {edge} references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: usize, vertex: String },
    #[error("loop edge {edge} at vertex `{vertex}`")]
    Loop { edge: usize, vertex: String },
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("f is undefined on the empty edge set")]
    EmptyEdgeSet,
    #[error("hinge vertex `{0}` cannot take part in count-matroid operations; expand hinges first")]
    HingeVertex(String),
    #[error("dimension {0} is outside the supported range 2..=6")]
    Dimension(usize),
    #[error("{model} requires d >= 3 (got d = {d})")]
    DimensionTooSmall { model: &'static str, d: usize },
    #[error("vertex `{vertex}` has kind {kind} which the {model} model does not accept")]
    KindMismatch {
        vertex: String,
        kind: &'static str,
        model: &'static str,
    },
    #[error("brute-force oracle limited to {limit} elements (got {size})")]
    OracleLimit { size: usize, limit: usize },
    #[error("edge set is not P-connected: {0}")]
    NotPConnected(String),
    #[error("{0} is not prime or not below 2^32")]
    BadPrime(u64),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("flats live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("flat {0} is contained in the hyperplane")]
    FlatInHyperplane(usize),
    #[error("random sampling failed after {0} attempts")]
    SamplingExhausted(usize),
    #[error("bar on edge {edge} is not incident to rod `{rod}`")]
    IncidenceViolation { edge: usize, rod: String },
    #[error("edge {edge} joins coincident joints")]
    CoincidentJoints { edge: usize },
    #[error("missing joint coordinates for vertex `{0}`")]
    MissingJoint(String),
    #[error("graph is not bipartite between bodies and hinges: edge {0}")]
    NotBipartite(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
