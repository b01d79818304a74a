use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty word")]
    EmptyWord,
    #[error("word contains the reserved end-marker symbol at position {0}")]
    ReservedSymbol(usize),
    #[error("expected exactly one end marker, found {0}")]
    MarkerCount(usize),
    #[error("not a BWT image")]
    NotBwtImage,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{0} is not primitive")]
    NotPrimitive(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("directive sequence too short: order {order} needs {needed} entries, got {got}")]
    InsufficientDirectives {
        order: usize,
        needed: usize,
        got: usize,
    },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
