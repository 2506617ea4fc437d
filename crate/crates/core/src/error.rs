use thiserror::Error;

use crate::geometry::Point;

/// Everything that can go wrong while validating input, building a network
/// or verifying one.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyInput,
    #[error("duplicate point {0}")]
    DuplicatePoint(Point),
    #[error("points are not in strictly convex position (offending point {0})")]
    NotConvexPosition(Point),
    #[error("coordinate out of range at {0} (limit is +/-{limit})", limit = crate::geometry::MAX_INPUT_COORD)]
    CoordinateOutOfRange(Point),
    #[error("chain points violate the monotonicity required for the {0:?} chain")]
    MonotonicityViolated(crate::ocp::ChainKind),
    #[error("internal geometry error: {0}")]
    InternalGeometry(String),
    #[error("point {0} is not a vertex of the network")]
    PointNotInNetwork(Point),
    #[error("rotation system is malformed: {0}")]
    MalformedRotation(String),
    #[error("scale {scale} is not a positive multiple of n = {n}")]
    BadScale { n: usize, scale: i64 },
    #[error("could not place {n} points in convex position on radius {radius}")]
    CannotReachN { n: usize, radius: i64 },
    #[error("invalid parameters: {0}")]
    BadParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
