use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("arity mismatch: expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS - 1)]
    TooManyVariables(usize),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("{0} is not in the span of the given generators")]
    NotInSpan(String),
    #[error("iteration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("complex invariant violated: {0}")]
    ComplexInvariant(String),
    #[error("invalid tower: {0}")]
    InvalidTower(String),
    #[error("{0} is not in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("point is not on the locus: {0}")]
    PointNotOnLocus(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
