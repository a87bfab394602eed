use thiserror::Error;

/// Errors raised by the finite-set, monad and space machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An enumerated carrier would exceed the configured element cap.
    #[error("enumeration budget exceeded: {what} needs {needed} elements, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: usize,
    },
    #[error("spaces are over different monads ({left} vs {right})")]
    IncompatibleMonads { left: String, right: String },
    #[error("operation requires the {expected} monad, got {found}")]
    WrongMonad { expected: String, found: String },
    #[error("space is not algebraic: {0}")]
    NotAlgebraic(String),
    #[error("algebra law violated: {0}")]
    LawViolation(String),
    #[error("generating map is not generating: {0}")]
    NotGenerating(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("encoding error: {0}")]
    Encoding(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Short machine-readable tag used in JSON error bodies.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::IncompatibleMonads { .. } => "incompatible_monads",
            Error::WrongMonad { .. } => "wrong_monad",
            Error::NotAlgebraic(_) => "not_algebraic",
            Error::LawViolation(_) => "law_violation",
            Error::NotGenerating(_) => "not_generating",
            Error::InternalInvariantViolated(_) => "internal_invariant_violated",
            Error::Invalid(_) => "invalid",
            Error::Encoding(_) => "encoding",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
