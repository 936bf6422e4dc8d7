use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty domain")]
    EmptyDomain,

    #[error("empty family")]
    EmptyFamily,

    #[error("{0}")]
    OutOfDomain(String),

    #[error("aggregation ratio {0} must lie in {1}")]
    BadRatio(String, &'static str),

    #[error("not a multi-utility: biconditional fails at ({x}, {y})")]
    NotMultiUtility { x: usize, y: usize },

    #[error("set {index} of the family is not increasing")]
    NotIncreasing { index: usize },

    #[error("function is not a {required} (classified as {actual})")]
    WrongClass {
        required: &'static str,
        actual: &'static str,
    },

    #[error("ground set of size {n} exceeds the exhaustive limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
