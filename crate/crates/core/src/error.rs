use thiserror::Error;

/// Errors raised while building groups or evaluating predicates over them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the dense bound {bound}")]
    OrderBoundExceeded { bound: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),

    #[error("map for element {element} is not an automorphism: {reason}")]
    NotAnAutomorphism { element: usize, reason: String },

    #[error("action is not a homomorphism: images of {x} and {y} do not compose")]
    NotAHomomorphism { x: usize, y: usize },

    #[error("group of order {order} exceeds the lattice bound {bound}")]
    LatticeBoundExceeded { order: usize, bound: usize },

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("operation requires a nontrivial group")]
    TrivialGroup,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("prime {prime} appears in more than one block")]
    OverlappingBlocks { prime: u64 },

    #[error("block {0} does not meet the group order")]
    UnknownBlock(String),

    #[error("group is not sigma-full for sigma = {sigma}")]
    NotSigmaFull { sigma: String },

    #[error("unknown corpus entry {0:?}")]
    UnknownEntry(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = GroupError> = std::result::Result<T, E>;
