use thiserror::Error;

/// Errors raised by geometric and algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (supported range is 2..=6)")]
    UnsupportedDimension(usize),
    #[error("empty point set")]
    Empty,
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("body is lower dimensional (intrinsic dimension {intrinsic} in R^{ambient})")]
    LowerDimensional { intrinsic: usize, ambient: usize },
    #[error("multiplicities sum to {found}, expected {expected}")]
    Multiplicity { expected: usize, found: usize },
    #[error("denominator mixed volume vanishes: {0}")]
    DegenerateDenominator(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("facet index {index} out of range ({count} facets)")]
    FacetIndex { index: usize, count: usize },
    #[error("perturbation t = {t} outside the stability interval {interval}")]
    UnstablePerturbation { t: String, interval: String },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("non-generic system: {0} (retry with a new seed)")]
    NonGeneric(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
