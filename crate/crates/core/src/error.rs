use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("operation is undefined for zero")]
    ZeroInteger,
    #[error("factoring budget exhausted with unfactored cofactor {0}")]
    BudgetExhausted(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("closed-form hypothesis violated: {0}")]
    ClosedForm(String),
    #[error("prime {prime} does not divide the discriminant")]
    PrimeNotInDiscriminant { prime: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
