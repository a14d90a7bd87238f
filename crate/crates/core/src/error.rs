use thiserror::Error;

/// Errors raised by the arithmetic, graph and witness layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modulus must be monic of degree >= 1")]
    NotMonic,
    #[error("modulus is reducible over F_{p}")]
    Reducible { p: u64 },
    #[error("operation needs a polynomial of degree >= {min}, got degree {found:?}")]
    DegreeTooSmall { min: usize, found: Option<usize> },
    #[error("exhaustive root scan needs p < 2^22, got {0}")]
    ScanGuard(u64),
    #[error("no linear factor found after {attempts} splitting attempts")]
    NoSplit { attempts: usize },
    #[error("equal-degree splitting needs odd characteristic")]
    EvenCharacteristic,
    #[error("field of order {p}^{k} is too large to enumerate")]
    TooLargeToIndex { p: u64, k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("subset size {0} outside 1..=8")]
    SubsetSize(usize),
    #[error("census needs {needed} subsets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("degenerate witness: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
