use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("form is definite (signature ({r},{s})); no nontrivial zeros exist")]
    Definite { r: usize, s: usize },
    #[error("zero coefficient at position {0}")]
    ZeroCoefficient(usize),
    #[error("could not parse coefficient `{0}`")]
    Parse(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("search budget {budget} exhausted without a witness")]
    BudgetExhausted { budget: u128 },
    #[error("no solution with weighted norm at most {norm_bound}")]
    CertifiedEmpty { norm_bound: String },
    #[error("comparison undecided at the precision cap: {0}")]
    Indeterminate(String),
    #[error("enumeration too large: {points} points exceeds the limit {limit}")]
    TooLarge { points: u128, limit: u128 },
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("kernel growth condition fails: {0}")]
    KernelCondition(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
