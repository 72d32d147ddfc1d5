use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("the given elements do not generate the domain (span {span} of {dim})")]
    NotGenerating { span: usize, dim: usize },

    #[error("generator images do not define a homomorphism: {0}")]
    NotWellDefined(String),

    #[error("dimension budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("generator index {index} out of range (have {count})")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("algebra {0} is not nilpotent")]
    NotNilpotent(String),

    #[error("nilpotent quotient did not stabilize by class {max_class} (history {history:?})")]
    NotStabilized {
        max_class: usize,
        history: Vec<usize>,
    },

    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),

    #[error("algebra {0} is not perfect")]
    NotPerfect(String),

    #[error("H2 of {name} is nonzero (dimension {dim})")]
    NonvanishingH2 { name: String, dim: usize },

    #[error("unsupported algebra class: {0}")]
    Unsupported(String),

    #[error("inputs refer to different base algebras: {0}")]
    InputMismatch(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),

    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
