use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modules over different algebras")]
    AlgebraMismatch,
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("quotient algebra has nonzero paths of length {0}; not finite-dimensional within the bound")]
    InfiniteDimensional(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module map: {0}")]
    InvalidMap(String),
    #[error("not a complex: {0}")]
    InvalidComplex(String),
    #[error("projective resolution longer than the cap {cap}")]
    ResolutionCap { cap: usize },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("model certification failed: {0}")]
    Certification(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
