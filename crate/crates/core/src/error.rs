use thiserror::Error;

use crate::decompose::TdViolation;
use crate::geometry::RectId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rectangle {0} is degenerate (needs x_lo < x_hi and y_lo < y_hi)")]
    DegenerateRect(RectId),
    #[error("rectangle {0} has a negative weight")]
    NegativeWeight(RectId),
    #[error("rectangle id {0} appears more than once")]
    DuplicateId(RectId),
    #[error("unknown rectangle id {0}")]
    UnknownId(RectId),
    #[error("family is not in general position; normalize it first")]
    NotNormalized,
    #[error("operation requires unit weights but rectangle {0} has a different weight")]
    Weighted(RectId),
    #[error("rectangles {0} and {1} cross")]
    CrossingPair(RectId, RectId),
    #[error("rectangle {container} contains rectangle {contained}")]
    ContainmentPair { container: RectId, contained: RectId },
    #[error("crossing order has a chain of length 3: {0} < {1} < {2}")]
    CrossingChain(RectId, RectId, RectId),
    #[error("edge {{{0}, {1}}} is not covered")]
    UncoveredEdge(RectId, RectId),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(TdViolation),
    #[error("rectangle {0} has no joint in the decomposed subgraph")]
    NoJoint(RectId),
    #[error("rectangle {0} has joints outside the decomposed subgraph")]
    PartialJoints(RectId),
    #[error("decomposition width {width} exceeds the ceiling {ceiling}; try a larger epsilon")]
    WidthCeiling { width: usize, ceiling: usize },
    #[error("instance has {n} vertices, above the exact-solver limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generator gave up after {attempts} rejected samples; lower the density")]
    RejectionBudget { attempts: usize },
}
