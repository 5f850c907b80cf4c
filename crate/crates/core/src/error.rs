use thiserror::Error;

/// Errors raised by the exact-arithmetic and representation-theory routines.
///
/// Failed identity checks are never errors; they are entries in a
/// [`Report`](crate::report::Report).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not nilpotent: M^{0} != 0")]
    NotNilpotent(usize),

    #[error("series base must have constant term 1, found {0}")]
    ConstantTermNotOne(String),

    #[error("series base has a non-constant term outside every truncated variable group: {0}")]
    UnboundedSeries(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("dimension n must be at least {min}, got {got}")]
    InvalidDimension { got: usize, min: usize },

    #[error("vector is not in the scaled coherent-state orbit: {0}")]
    NotInOrbit(String),

    #[error("singular coordinates: {0}")]
    SingularCoordinates(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("unknown generator label `{0}`")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_dimension(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::InvalidDimension { got: n, min })
    } else {
        Ok(())
    }
}
