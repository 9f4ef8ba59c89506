use thiserror::Error;

use crate::exactnum::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a unit series: {0}")]
    NotAUnitSeries(String),
    #[error("non-monomial divisor ({0} terms)")]
    NonMonomialDivisor(usize),
    #[error("order not closed: {0}")]
    OrderNotClosed(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("requires half-integral ring")]
    RequiresHalfIntegralRing,
    #[error("non-invertible generator parameter: {0}")]
    NonInvertible(String),
    #[error("insufficient precision: determinant vanishes mod {0}^{1}")]
    InsufficientPrecision(u64, u32),
    #[error("reduction failure at p = {0}")]
    ReductionFailure(u64),
    #[error("singular element")]
    Singular,
    #[error("eight-term Siegel sum left a remainder for m = {0:?}")]
    TranscriptionError((u32, u32, u32)),
    #[error("non-palindromic Laurent polynomial")]
    NonPalindromic,
    #[error("non-positive input")]
    NonPositive,
    #[error("residue algebra mismatch: {0}")]
    ResidueAlgebraMismatch(String),
    #[error("non-positive Gamma argument {0}")]
    NonPositiveGammaArgument(Rational),
    #[error("missing eigenvalue for prime {0}")]
    MissingPrime(u64),
    #[error("need more eigenvalues: {0}")]
    NeedMoreEigenvalues(String),
    #[error("tilde-f parity bug at p = {0}")]
    ParityBug(u64),
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
