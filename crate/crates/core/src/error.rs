use thiserror::Error;

/// Everything that can go wrong while building graphs, reducing matrices or
/// evaluating the finiteness criteria.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("{field} must be positive, got {value}")]
    NonPositive { field: String, value: u64 },

    #[error("circuit enumeration exceeded the cap of {cap} circuits")]
    TooManyCircuits { cap: usize },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("intersection matrix has {zeros} zero invariant factors, expected exactly 1")]
    MalformedSpectrum { zeros: usize },

    #[error("vector is not a cycle modulo {q}")]
    NotACycle { q: u64 },

    #[error("semistability required: m1 = {m1}, expected 1")]
    SemistabilityRequired { m1: u64 },

    #[error("no multidegree supplied")]
    MissingMultidegree,

    #[error("multidegree total {total} is not divisible by r = {r}")]
    MultidegreeNotDivisible { total: i128, r: u64 },

    #[error("edge `{edge}` has stabilizer order {found}, expected {expected}")]
    StabilizerMismatch { edge: String, found: u64, expected: u64 },

    #[error("r * m1 overflows a 64-bit integer")]
    ModulusOverflow,

    #[error("r = {0} is not a positive multiple of 4")]
    BadModulus(u64),

    #[error("bounds too large: {0}")]
    BoundsTooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
