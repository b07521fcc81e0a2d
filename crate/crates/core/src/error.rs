use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {0} exceeds the 65536 element limit")]
    FieldTooLarge(u128),
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("divisor classes live on different surfaces")]
    SurfaceMismatch,
    #[error("operation unsupported for {0}")]
    UnsupportedSurface(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("point subset {0} unsupported for this surface")]
    UnsupportedSubset(String),
    #[error("divisor has no global sections")]
    EmptySystem,
    #[error("enumeration needs {required} codewords, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("divisor is not very ample")]
    NotVeryAmple,
    #[error("negative intersection number {0}")]
    NegativeIntersection(i64),
    #[error("Seshadri lower bound must be positive")]
    InvalidEpsilon,
    #[error("generation exponent must be at least 1")]
    InvalidXi,
    #[error("lifting degree must be at least 1")]
    InvalidDegree,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("only even-degree hyperelliptic models are supported")]
    OddDegree,
    #[error("only {available} factors of the requested kind exist, {requested} requested")]
    NotEnoughFactors { requested: usize, available: u128 },
    #[error("matrix of dimension {0} is too large")]
    TooLarge(usize),
    #[error("genus {0} outside the supported range")]
    GOutOfRange(i64),
    #[error("infinite coordinates cannot be mapped")]
    InfiniteInput,
    #[error("invalid genus: {0}")]
    InvalidGenus(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Precondition,
    Budget,
    Io,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::BudgetExceeded { .. } | Error::TooLarge(_) => ErrorClass::Budget,
            Error::Io(_) | Error::Json(_) => ErrorClass::Io,
            _ => ErrorClass::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
