use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    /// `index` is the size of the first leading principal minor that is not positive.
    #[error("form is not positive definite: leading minor of order {index} is {minor}")]
    NotPositiveDefinite { index: usize, minor: i128 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("enumeration budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("Bell index requires alpha <= beta, got ({alpha}, {beta})")]
    OrderViolated { alpha: u32, beta: u32 },

    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),

    #[error("closed form produced a non-integral value: {0}")]
    NonIntegerResult(String),

    #[error("congruence system has no solution")]
    Unsolvable,

    #[error("{value} is not in the progression {modulus}n+{residue} used by case {case}")]
    WrongProgression {
        case: &'static str,
        value: i64,
        modulus: i64,
        residue: i64,
    },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("theta cache I/O: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
