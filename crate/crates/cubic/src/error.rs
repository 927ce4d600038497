use thiserror::Error;

/// Errors raised by the form, census, local-type and density routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate form: discriminant is zero")]
    Degenerate,
    #[error("transform determinant {0} is not a unit")]
    NonUnimodular(String),
    #[error("form is irreducible over Q")]
    IrreducibleInput,
    #[error("prime {0} divides the discriminant; use the p-adic path")]
    PrimeDividesDisc(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("p-adic precision exhausted at p = {p} (cap {cap} digits)")]
    PrecisionExhausted { p: u64, cap: u32 },
    #[error("coefficient box {box_bound} is not stable: {detail}")]
    IncompleteBox { box_bound: i64, detail: String },
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("invalid field data: {0}")]
    InvalidFieldData(String),
    #[error("unsupported exponent {0}")]
    UnsupportedExponent(String),
    #[error("cross-validation failed: {0}")]
    CrossValidation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
