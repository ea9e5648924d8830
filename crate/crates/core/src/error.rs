use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown type code {0:?}")]
    BadTypeCode(String),
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("simple root index {0} out of range")]
    BadIndex(usize),
    #[error("invalid parabolic subset: {0}")]
    BadParabolic(String),
    #[error("t = {t} outside 1..={max}")]
    BadT { t: usize, max: usize },
    #[error("not a filtration: {0}")]
    NotAFiltration(String),
    #[error("construction not applicable: {0}")]
    NotApplicable(String),
    #[error("input algebra is abelian")]
    AbelianInput,
    #[error("algebra has odd dimension {0}")]
    OddDim(usize),
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    JacobiFail(usize, usize, usize),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("highest weight check failed: {0}")]
    Mismatch(String),
    #[error("dimension {dim} too large for {what} (limit {limit})")]
    TooLarge { what: &'static str, dim: usize, limit: usize },
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::SchemaError(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
