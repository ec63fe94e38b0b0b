use crate::poly::PolyError;
use crate::poset::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid arrangement: {0}")]
    Invalid(#[from] Diagnostic),
    #[error("unknown stratum id {0:?}")]
    UnknownId(String),
    #[error("duplicate stratum id {0:?}")]
    DuplicateId(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("stage error: {0}")]
    Stage(String),
    #[error("theorem hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("grading error: {0}")]
    Grading(String),
    #[error("builder error: {0}")]
    Builder(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
