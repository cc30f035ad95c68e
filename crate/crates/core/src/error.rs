use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input that cannot describe a valid object (duplicate vertices, bad JSON shape, ...).
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// Arguments are individually valid but do not fit together.
    #[error("domain error: {0}")]
    Domain(String),
    /// An internal algebraic identity failed (D^2 != 0, chain map does not commute, ...).
    #[error("integrity error: {0}")]
    Integrity(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! integrity {
    ($($arg:tt)*) => { $crate::error::Error::Integrity(format!($($arg)*)) };
}
pub(crate) use domain;
pub(crate) use integrity;
