use thiserror::Error;

use crate::roots::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: Family, rank: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix does not lie in {0}")]
    NotInAlgebra(String),

    #[error("families differ: {0} vs {1}")]
    FamilyMismatch(Family, Family),

    #[error("source rank {src} must be smaller than target rank {tgt}")]
    RankOrder { src: usize, tgt: usize },

    #[error("condition (1) fails: {0}")]
    ConditionOneFails(String),

    #[error("embedding outside the supported class: {0}")]
    AssumptionViolated(String),

    #[error("elements belong to different algebras: {0} vs {1}")]
    AlgebraMismatch(String, String),

    #[error("element is not homogeneous for the root grading")]
    NotHomogeneous,

    #[error("label {0} is not admissible here")]
    InadmissibleLabel(String),

    #[error("not a root of {kind}: {coords}")]
    NotARoot { kind: String, coords: String },

    #[error("malformed specification: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
