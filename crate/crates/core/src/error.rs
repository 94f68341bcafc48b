use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("{0} is not a root")]
    NotARoot(String),

    #[error("{0} is not a positive root")]
    NotAPositiveRoot(String),

    #[error("root {0} lies in the parabolic subsystem")]
    RootInParabolic(String),

    #[error("elements belong to different root systems")]
    MixedRootSystems,

    #[error("{0} is not a minimal coset representative")]
    NotMinimalRep(String),

    #[error("vertex {0} is not in the graph")]
    VertexNotFound(String),

    #[error("sigma must satisfy 0 < sigma < 1, got {0}")]
    SigmaOutOfRange(String),

    #[error("weight {0} is not level-zero dominant")]
    NotDominant(String),

    #[error("malformed path: {0}")]
    MalformedPath(String),

    #[error("path is outside the integrality class for index {0}")]
    NotIntegral(usize),

    #[error("path is not a quantum LS path of this shape")]
    NotMember,

    #[error("direction {0} is not in the orbit of the shape weight")]
    NotInOrbit(String),

    #[error("cannot concatenate an empty list of paths")]
    EmptyConcat,

    #[error("size cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
