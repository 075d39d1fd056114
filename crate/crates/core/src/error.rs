use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("enumeration of {what} exceeds budget of {budget} elements")]
    BudgetExceeded { what: String, budget: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("operands are not comparable: {0}")]
    KindMismatch(String),
    #[error("labels do not match the ideal generators: {0}")]
    LabelMismatch(String),
    #[error("integer overflow in {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
