use thiserror::Error;

/// Errors raised by constructors, parsers and rewriting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("generator {0} is not in the alphabet")]
    UnknownGenerator(String),
    #[error("coset enumeration exceeded its limits")]
    Overflow,
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("cyclic quotient precondition failed: {0}")]
    Precondition(String),
    #[error("search space too large: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
