use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("graph is disconnected: {0}")]
    Disconnected(String),
    #[error("not a tube: {0}")]
    NotATube(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    #[error("host mismatch: {0}")]
    HostMismatch(String),
    #[error("not certified: {0}")]
    Uncertified(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
    #[error("d^2 != 0 in degree {0}")]
    NotAComplex(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
