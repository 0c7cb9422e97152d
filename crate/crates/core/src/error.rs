//! Error types.

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("polygon is not convex")]
    NonConvex,
    #[error("origin is not strictly inside the polygon")]
    OriginNotInterior,
    #[error("polygon needs at least three non-collinear vertices")]
    TooFewVertices,
    #[error("point is not on the homothet boundary")]
    PointNotOnBoundary,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown shape preset `{0}`")]
    UnknownPreset(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamError {
    #[error("chord endpoints coincide")]
    DegenerateChord,
    #[error("origin is not strictly inside the polygon")]
    OriginNotInterior,
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DelaunayError {
    #[error("sites {0} and {1} coincide")]
    CoincidentSites(usize, usize),
    #[error("oracle resolution {0} is below the minimum of 64")]
    ResolutionTooLow(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpannerError {
    #[error("sites {0} and {1} are not connected")]
    Disconnected(usize, usize),
    #[error("edges {0:?} and {1:?} are not disjoint")]
    NotPlane((usize, usize), (usize, usize)),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
