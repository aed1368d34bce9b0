use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero in prime field")]
    DivisionByZero,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u32),
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ring with {0} variables exceeds the supported maximum")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("genericity failure after {attempts} attempts: {what}")]
    Genericity { what: String, attempts: usize },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("inverse not found within degree bound {0}")]
    InverseNotFound(u32),
    #[error("computation exceeded its time budget")]
    Timeout,
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
