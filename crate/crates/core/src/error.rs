use thiserror::Error;

use crate::algebra::GroupFamily;

#[derive(Debug, Error)]
pub enum BiqError {
    #[error("family mismatch: {0} vs {1}")]
    FamilyMismatch(GroupFamily, GroupFamily),

    #[error("unsupported family {0}: {1}")]
    Unsupported(GroupFamily, String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not positive definite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("degenerate plane (relative area {0:e})")]
    DegeneratePlane(f64),

    #[error("vector is not horizontal (residual {0:e})")]
    NotHorizontal(f64),

    #[error("action is not free at this point (smallest Gram eigenvalue {0:e})")]
    SingularGram(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("solver failed: {0}")]
    SolverFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, BiqError>;
