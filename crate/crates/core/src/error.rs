use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by {}", if *exact { "exact zero" } else { "a ball containing zero" })]
    DivisionByZero { exact: bool },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the algebra has no identity")]
    NoIdentity,
    #[error("the identity is not unique")]
    NonUniqueIdentity,
    #[error("unknown algebra type `{0}`")]
    UnknownType(String),
    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent multiplication data: {0}")]
    Contradiction(String),
    #[error("axis permutation does not extend to an automorphism: {0}")]
    NotExtendable(String),
    #[error("linear system: {0}")]
    Linear(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("undecided at available precision: {0}")]
    Undecided(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("unknown strategy `{0}` (available: {1})")]
    UnknownStrategy(String, String),
    #[error("writing output: {0}")]
    Output(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
