use thiserror::Error;

/// Errors raised by the exact algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not symmetric (entry ({row}, {col}) differs from its transpose)")]
    NotSymmetric { row: usize, col: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements belong to different Lie algebras")]
    ParentMismatch,

    #[error("invalid structure constants at basis triple ({i}, {j}, {k}): {reason}")]
    InvalidStructure { i: usize, j: usize, k: usize, reason: String },

    #[error("invalid Spindler data at basis triple ({0}, {1}, {2}): {3}")]
    InvalidData(usize, usize, usize, String),

    #[error("symplectic form is singular")]
    OmegaSingular,

    #[error("torus elements do not commute")]
    NotAbelian,

    #[error("classification condition ({condition}) violated: {detail}")]
    ConditionViolation { condition: u8, detail: String },

    #[error("matrix is not a derivation: {0}")]
    NotADerivation(String),

    #[error("derivation does not induce a 3-grading: {0}")]
    NotAGrading(String),

    #[error("algebra is not a generalized Heisenberg algebra: {0}")]
    NotHeisenberg(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("element is not in the requested eigenspace: {0}")]
    NotInEigenspace(String),

    #[error("witness is not in the cone")]
    WitnessNotInCone,

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
