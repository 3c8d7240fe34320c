use thiserror::Error;

use crate::geom::Ball;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum YolkError {
    #[error("hyperplane normal has zero length")]
    ZeroNormal,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("points must have dimension at least 2, found {0}")]
    DimensionTooSmall(usize),
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),
    #[error("negative radius {0}")]
    NegativeRadius(f64),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("pivot is {0} away from the hyperplane")]
    PivotNotOnHyperplane(f64),
    #[error("electorate is empty")]
    EmptyElectorate,
    #[error("operation supports dimension 2 only, found {0}")]
    UnsupportedDimension(usize),
    #[error("no second ideal point to rotate onto")]
    NoSecondPoint,
    #[error("constraint set is empty")]
    EmptyConstraintSet,
    #[error("no convergence after {iterations} iterations (best radius {})", best.radius)]
    ConvergenceFailure { iterations: usize, best: Ball },
    #[error("hyperplane {index} is not tangent to the ball (distance off by {offset})")]
    NotTangent { index: usize, offset: f64 },
    #[error("tangent hyperplanes do not cover every hemisphere")]
    NoCover,
    #[error("lines are identical")]
    IdenticalLines,
    #[error("region point lies on a line")]
    RegionPointOnLine,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("denominator vanishes ({0})")]
    DegenerateDenominator(f64),
    #[error("need at least 3 tangent directions, found {0}")]
    InsufficientTangents(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, YolkError>;
