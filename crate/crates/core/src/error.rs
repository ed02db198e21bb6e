use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("radicand {0} is not a square-free integer greater than 1")]
    BadRadicand(u64),
    #[error("scalar fields differ: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("polynomial variable lists differ")]
    VariableMismatch,
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected a univariate polynomial, got {0} variables")]
    NotUnivariate(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("negative Hilbert series coefficient at degree {0}: degrees do not form a regular sequence")]
    NotRegular(u64),
    #[error("operation requires a surface (dim V = 2), got dim V = {0}")]
    NotSurface(usize),
    #[error("derivation is not known to be locally nilpotent within cap {0}")]
    NotNilpotent(usize),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
