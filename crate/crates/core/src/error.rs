use thiserror::Error;

use crate::boolalg::SetElement;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument does not belong to the algebra or ring it was used with.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("universe must be nonempty")]
    EmptyUniverse,

    #[error("finite fields of sets are limited to 64 atoms, got {0}")]
    TooManyBlocks(usize),

    #[error("point {0} is outside the universe")]
    OutsideUniverse(u64),

    #[error("ideal is not proper (it contains the top element)")]
    ImproperIdeal,

    #[error("algebra is complete: no completeness counterexample exists")]
    AlgebraComplete,

    #[error("class is not idempotent: coz(f^2 - f) = {witness} is not in the ideal")]
    NotIdempotent { witness: SetElement },

    #[error("family is not orthogonal: {0}")]
    NonOrthogonal(String),

    #[error("subalgebra is not dense: {0}")]
    NotDense(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }
}
