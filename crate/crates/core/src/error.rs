use thiserror::Error;

/// Error type shared across the crate. Input-shaped problems each get their
/// own variant so the CLI can map them to distinct messages and exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("disconnected: vertices {0:?} and {1:?} are in different components")]
    Disconnected(String, String),
    #[error("nonpositive weight on edge ({0:?}, {1:?})")]
    NonpositiveWeight(String, String),
    #[error("duplicate edge ({0:?}, {1:?})")]
    DuplicateEdge(String, String),
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("unknown point id {0:?}")]
    UnknownPoint(String),
    #[error("empty subset")]
    EmptySubset,
    #[error("subset member {0:?} is not a vertex of the space")]
    SubsetOutsideSpace(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid weight literal {0:?}")]
    InvalidWeight(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("not an isometry: permutation moves ({0}, {1}) to a pair at a different distance")]
    NotAnIsometry(String, String),
    #[error("not a permutation of the vertex set")]
    NotAPermutation,
    #[error("isometry is not hyperbolic")]
    NotHyperbolic,
    #[error("word uses letter {0:?} outside the generator alphabet")]
    LetterOutsideAlphabet(char),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("relator reduces to the empty word")]
    TrivialRelator,
    #[error("labelled graph has a vertex of degree 1: {0:?}")]
    DegreeOneVertex(String),
    #[error("attachment invalid: {0}")]
    InvalidAttachment(String),
    #[error("rotation subgroup element does not fix its apex {0:?}")]
    SubgroupNotFixingApex(String),
    #[error("inconsistent inputs: {0}")]
    InconsistentInput(String),
    #[error("malformed input document: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
