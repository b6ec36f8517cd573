use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("sign homomorphism {sigma} is not defined for {algebra}")]
    InadmissibleSign { algebra: String, sigma: String },
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
    #[error("malformed Kac coordinates: {0}")]
    MalformedKac(String),
    #[error("level M = {level} must exceed {bound}")]
    LevelTooSmall { level: i64, bound: i64 },
    #[error("sample grid does not match the expected point set: {0}")]
    GridMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
