//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("operands live in different variable sets ({left} vs {right} variables)")]
    VariableMismatch { left: usize, right: usize },

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("division is not exact: {0}")]
    NonExactDivision(String),

    #[error("antiderivative would produce a log term: nonzero exponent -1 coefficient in variable {var}")]
    LogTerm { var: usize },

    #[error("substitution hits a pole of the expression")]
    PoleAtEvaluation,

    #[error("pole order {order} exceeds requested expansion depth {depth}")]
    PoleOrderExceeded { order: usize, depth: usize },

    #[error("expression failed to reduce to a Laurent polynomial ({0})")]
    NotLaurent(String),

    #[error("brute-force oracle cap exceeded: total degree {total} > cap {cap}")]
    OracleCapExceeded { total: u32, cap: u32 },

    #[error("(g, v) = ({g}, {v}) is not stable (2g - 2 + v <= 0)")]
    Unstable { g: u32, v: u32 },

    #[error("identity checked outside its hypotheses: {0}")]
    IdentityHypothesis(String),

    #[error("top-degree part does not have the expected shape: {0}")]
    TopDegreeShape(String),

    #[error("series precondition violated: {0}")]
    SeriesPrecondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
