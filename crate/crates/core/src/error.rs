use thiserror::Error;

/// Errors raised by the arithmetic and group-action layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclotomic level mismatch: {left} vs {right}")]
    LevelMismatch { left: u64, right: u64 },

    #[error("series width mismatch: {left} vs {right}")]
    WidthMismatch { left: u64, right: u64 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("level must be positive")]
    ZeroLevel,

    #[error("inverse of zero")]
    DivisionByZero,

    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: i64, modulus: u64 },

    #[error("level {from} does not divide level {to}")]
    NotADivisor { from: u64, to: u64 },

    #[error("determinant {det} is not 1 modulo {modulus}")]
    DeterminantNotOne { det: String, modulus: u64 },

    #[error("weight {0} is not supported (need k >= 3)")]
    UnsupportedWeight(u32),

    #[error("tau must lie in the upper half-plane (Im tau = {0})")]
    NotInUpperHalfPlane(f64),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("expansion is not integral: {0}")]
    NotIntegral(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
