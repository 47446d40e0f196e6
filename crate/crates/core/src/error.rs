//! Shared error type for all algebra operations.

use thiserror::Error;

/// Errors raised by exact-arithmetic operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Incompatible inputs: mismatched field, truncation order or algebra tag.
    #[error("configuration error: {0}")]
    Config(String),
    /// Inversion of a scalar whose residue is zero.
    #[error("element is not a unit")]
    NotAUnit,
    /// The residue has no square root in the base field under the configured convention.
    #[error("no square root in the base field")]
    NoSquareRoot,
    /// `nilpotency_degree` called on a non-nilpotent element.
    #[error("element is not nilpotent")]
    NotNilpotent,
    /// Bezout/Hensel input polynomials are not coprime modulo the maximal ideal.
    #[error("polynomials are not coprime over the residue field")]
    NotCoprime,
    /// The residue of the polynomial to lift does not match the given factorization.
    #[error("residue factorization mismatch")]
    FactorizationMismatch,
    /// A polynomial whose residue must split into linear factors does not.
    #[error("polynomial does not split over the base field")]
    NotSplit,
    /// Inversion of a singular element (series or algebra element).
    #[error("element is not invertible")]
    NotInvertible,
    /// Power-series evaluation with a denominator vanishing on the block.
    #[error("series denominator vanishes on the block")]
    SingularSeries,
    /// A block idempotent requested for an eigenvalue tuple with zero block.
    #[error("eigenvalue tuple has zero block")]
    ZeroBlock,
    /// Sign function requested on a cyclic quiver component.
    #[error("sign function is ambiguous on cyclic quiver components")]
    SignAmbiguity,
    /// Cyclotomic level data invalid (quantum case needs unit constant terms).
    #[error("invalid cyclotomic level data: {0}")]
    InvalidLevelData(String),
}

impl AlgebraError {
    pub fn config(msg: impl Into<String>) -> Self {
        AlgebraError::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
