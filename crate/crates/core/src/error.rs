use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no degree or factorization")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous; graded components in degrees {degrees:?}")]
    NotHomogeneous { degrees: Vec<i64> },
    #[error("operands belong to different algebras")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact: {0}")]
    InexactDivision(String),
    #[error("affine map with zero scale is not invertible")]
    ZeroScale,
    #[error("operation requires the Weyl algebra (q = 1)")]
    NotWeylMode,
    #[error("invalid value for q: {0}")]
    InvalidQ(String),
    #[error("constant polynomial has no irreducibility status")]
    ConstantInput,
    #[error("no lucky evaluation point found after {attempts} attempts")]
    RetryBudgetExhausted { attempts: usize },
    #[error("factorization failed verification: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
