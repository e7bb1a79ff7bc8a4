use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree {d} is too small: need at least {needed}")]
    DegreeTooSmall { d: usize, needed: usize },

    #[error("lattice basis is rank deficient")]
    RankDeficient,

    #[error("sublattice is not contained in the ambient lattice")]
    NotContained,

    #[error("sublattice is not saturated (quotient would have torsion)")]
    NotSaturated,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("insufficient degree: rank I_Y(D) = {rank_y}, rank I_(Y+X_i)(D) = {rank_union} for component {component}")]
    InsufficientDegree {
        component: usize,
        rank_y: usize,
        rank_union: usize,
    },

    #[error("degree cap {cap} exceeded after {built} chain steps")]
    CapExceeded { cap: usize, built: usize },

    #[error("factorization check failed: {0}")]
    Factorization(String),

    #[error("no form within the norm budget was found")]
    BudgetTooSmall,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
