use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cohomological index {q} is outside [0, {top}]")]
    IndexOutOfRange { q: usize, top: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("inconsistent exact sequence at twist {k}: {detail}")]
    Inconsistent { k: i64, detail: String },

    #[error("table is not exact: negative dimension {value} in degree {k}")]
    NonExactTable { k: i64, value: String },

    #[error("cannot certify h^{i}(k = {k}): value is only known as {range}")]
    Uncertified { i: usize, k: i64, range: String },

    #[error("support of h^{i} is unbounded {side}; vanishing cannot be certified")]
    UnboundedSupport { i: usize, side: &'static str },

    #[error("degree is not an integer: {0}")]
    NonIntegralDegree(String),

    #[error("dependency locus is degenerate: the degree class vanishes identically")]
    DegenerateLocus,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
