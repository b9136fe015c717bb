use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parameter `{0}` is not declared in the variable table")]
    VarTableMismatch(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("wrong algebra kind: {0}")]
    KindMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("module map is not invertible: {0}")]
    NotInvertible(String),
    #[error("tensor has the wrong symmetry: {0}")]
    WrongSymmetry(String),
    #[error("not a quadratic conformal algebra: {0}")]
    NotQuadratic(String),
    #[error("inconsistent system: equation `{0}` reduces to a nonzero constant")]
    Inconsistent(String),
    #[error("degenerate bilinear form")]
    DegenerateForm,
    #[error("unknown basis name `{0}`")]
    UnknownBasis(String),
    #[error("unknown catalog entry `{name}`; available: {available}")]
    UnknownCatalog { name: String, available: String },
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
