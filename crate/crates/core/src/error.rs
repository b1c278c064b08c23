use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("modulus is not an irreducible polynomial of degree {0}")]
    ReducibleModulus(u32),
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("element does not belong to field {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no element of order {p} in F_{host}")]
    NoRootOfUnity { p: u64, host: u64 },
    #[error("characteristic {0} equals the characteristic of F_q; rank formula not available")]
    CharacteristicP(u64),
    #[error("formula hypothesis n >= r + s fails (n = {n}, r = {r}, s = {s})")]
    FormulaHypothesis { n: usize, r: usize, s: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
