use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic extensions")]
    NestedExtension,
    #[error("negative discriminant")]
    NegativeDiscriminant,
    #[error("no root inside the selector")]
    NoRootInSelector,
    #[error("two roots inside the selector")]
    TwoRootsInSelector,
    #[error("orbit reached a pole at step {0}")]
    Pole(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("undefined operator: {0}")]
    UndefinedOperator(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("letters violate the two-letter alphabet: {0}")]
    AlphabetViolation(String),
    #[error("net negative power survives cancellation: {0}")]
    NegativePower(String),
    #[error("no synchronization within {0} steps")]
    NoSync(usize),
    #[error("root selection failed: {0}")]
    RootSelection(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
