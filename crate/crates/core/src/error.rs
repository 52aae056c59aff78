use thiserror::Error;

/// Errors raised by the enumerator library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic field mismatch: Z[zeta_{left}] vs Z[zeta_{right}]")]
    FieldMismatch { left: u64, right: u64 },

    #[error("no common cyclotomic field for characteristics {0} and {1}")]
    NoCommonField(u64, u64),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid ring parameters: {0}")]
    InvalidRing(String),

    #[error("modulus is not monic of degree {0}")]
    ModulusNotMonic(usize),

    #[error("modulus is reducible modulo {0}")]
    ModulusReducible(u64),

    #[error("element index {index} out of range for a ring with {cardinality} elements")]
    IndexOutOfRange { index: u64, cardinality: u64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} needs {needed}, which exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("operation requires a field (e = 1)")]
    NotAField,

    #[error("word set is not a submodule: {0}")]
    NotLinear(String),

    #[error("dimension {r} out of range 0..={max}")]
    DimensionOutOfRange { r: usize, max: usize },

    #[error("incompatible variable registries: {0}")]
    IncompatibleRegistry(String),

    #[error("substitution map has no image for variable {0}")]
    PartialSubstitution(String),

    #[error("coefficient {0} is not a rational integer")]
    NonIntegerCoefficient(String),

    #[error("coefficient {coeff} is not divisible by {divisor}")]
    NotDivisible { coeff: String, divisor: String },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("illegal specialization {from} -> {to}")]
    IllegalSpecialization { from: String, to: String },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
