use thiserror::Error;

/// Errors raised by graph construction, weight enumeration and cocycle manipulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("vertex `{vertex}` has degree {degree}; only degrees 1 and 3 are allowed")]
    Degree { vertex: String, degree: usize },

    #[error("boundary mismatch at vertex `{vertex}`: {reason}")]
    BoundaryMismatch { vertex: String, reason: &'static str },

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("edge set is not a cycle: odd local degree at vertex `{vertex}`")]
    NotACycle { vertex: String },

    #[error("operation is undefined for the zero cycle")]
    ZeroCycle,

    #[error("cannot cut edge `{edge}`: it is incident to a univalent vertex")]
    CutLeafEdge { edge: String },

    #[error("level must be a positive integer, got {0}")]
    InvalidLevel(u32),

    #[error("weight {value} on {place} lies outside [0, {level}]")]
    Range { place: String, value: u32, level: u32 },

    #[error("expected {expected} entries, got {actual} ({what})")]
    Arity {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("first Betti number {0} exceeds the supported maximum of 63")]
    GenusTooLarge(usize),

    #[error("cocycle table is incomplete: {0}")]
    IncompleteTable(String),

    #[error("table is not a twisted 1-cocycle")]
    NotACocycle,

    #[error("cocycle is not a coboundary")]
    NotACoboundary,

    #[error("character on orbit {orbit} is not a homomorphism on its stabilizer")]
    NotAHomomorphism { orbit: usize },

    #[error("work estimate {needed} exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("cycle does not fix the weight")]
    NotFixed,

    #[error("parity identity fails on orbit {orbit}: {detail}")]
    ParityFailure { orbit: usize, detail: String },

    #[error("graph is not of type Γ(n): {0}")]
    NotGammaN(&'static str),

    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    #[error("cochains belong to different weight spaces")]
    ContextMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
