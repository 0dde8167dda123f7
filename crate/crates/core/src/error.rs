use thiserror::Error;

/// Errors raised by the geometry primitives, depth kernels, oracles and
/// approximation algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {0} is too small (need at least {1})")]
    DimensionTooSmall(usize, usize),
    #[error("vector is not of unit length")]
    NotUnit,
    #[error("great circle through nearly identical or antipodal points is not unique")]
    DegenerateGeodesic,
    #[error("naive spherical mean of points averaging to the origin is undefined")]
    DegenerateMean,
    #[error("grid with {per_angle} value(s) per angle is too coarse for dimension {dim} and budget {budget}")]
    GridTooCoarse { dim: usize, budget: usize, per_angle: usize },
    #[error("evaluation budget exhausted")]
    BudgetExhausted,
    #[error("covariance matrix is singular")]
    SingularCovariance,
    #[error("zonoid LP did not reach feasibility tolerance (residual {0:e})")]
    LpNumericalFailure(f64),
    #[error("need at least {needed} sample points, got {got}")]
    DataTooSmall { needed: usize, got: usize },
    #[error("invalid dataset: {0}")]
    InvalidData(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("exact {0} depth is not available for dimension {1}")]
    UnsupportedExact(&'static str, usize),
    #[error("relative error needs strictly positive exact depths")]
    ExactNonPositive,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
