use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different ring contexts")]
    ContextMismatch,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("step budget of {budget} reduction steps exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("computation needs {needed} variables, above the cap of {cap}")]
    TooManyVariables { needed: usize, cap: usize },
    #[error("ideal is not monomial: {0}")]
    NonMonomial(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("coefficient {0} has no image in the target field")]
    Unrepresentable(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::TooManyVariables { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
