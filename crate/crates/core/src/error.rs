use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("point ({x}, {omega}) is not on the required grid")]
    OffGrid { x: f64, omega: f64 },
    #[error("zero window")]
    ZeroWindow,
    #[error("zero signal")]
    ZeroSignal,
    #[error("wrong representation kind: expected {expected}, got {got}")]
    WrongKind { expected: &'static str, got: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("hermite order {0} beyond validated range (max {max})", max = crate::hermite::MAX_ORDER)]
    OrderOutOfRange(usize),
    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),
    #[error("linear algebra failure: {0}")]
    LinAlg(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
