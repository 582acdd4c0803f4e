use thiserror::Error;

/// Errors raised by graph construction, colouring checks and the searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    OutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("bad size {size} for {family}")]
    BadSize { family: String, size: usize },
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("graph with {0} vertices is too large for short-form graph6 (limit 62)")]
    TooLarge(usize),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("permutation is not an automorphism of the graph")]
    NotAutomorphism,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("graph with {vertices} vertices exceeds the brute-force oracle limit of {limit}")]
    TooLargeForOracle { vertices: usize, limit: usize },
    #[error("graph with {vertices} vertices exceeds the search cutoff of {cutoff}")]
    TooLargeForSearch { vertices: usize, cutoff: usize },
    #[error("colouring targets {found} but the mode targets {expected}")]
    ModeMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("input colouring is not suitable for mode {0}")]
    NotSuitableInput(String),
    #[error("invalid injection witness: {0}")]
    InvalidInjection(String),
    #[error("expected a condition-{expected} colouring, found condition {found}")]
    WrongCondition { expected: char, found: char },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code: 2 for bad input, 1 for failed verification or search.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::NotSuitableInput(_)
            | Error::VerificationFailed(_)
            | Error::TooLargeForOracle { .. }
            | Error::TooLargeForSearch { .. }
            | Error::NotAutomorphism => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
