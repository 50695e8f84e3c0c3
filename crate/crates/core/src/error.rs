use thiserror::Error;

/// Errors reported by the operator algebra and its companion structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("coordinate index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },

    #[error("bit vector of length {len} does not match arity {arity}")]
    VectorLength { len: usize, arity: usize },

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("{0}")]
    Domain(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_arity(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::ArityMismatch { left, right })
    }
}

pub(crate) fn check_index(index: usize, arity: usize) -> Result<()> {
    if index >= 1 && index <= arity {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index, arity })
    }
}
