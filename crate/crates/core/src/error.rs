use thiserror::Error;

use crate::lattice::Point;

/// Errors raised by image construction, analysis and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("adjacency parameter u={u} is outside 1..={dim}")]
    AdjacencyOutOfRange { u: usize, dim: usize },
    #[error("image has no points")]
    EmptyImage,
    #[error("duplicate point {0}")]
    DuplicatePoint(Point),
    #[error("point {0} is not in the image")]
    NotInImage(Point),
    #[error("image is not connected")]
    Disconnected,
    #[error("no path between {0} and {1}")]
    NoPath(Point, Point),
    #[error("self-map has {found} entries but the image has {expected} points")]
    MapSize { expected: usize, found: usize },
    #[error("self-map is not continuous")]
    NotContinuous,
    #[error("{what} is limited to {cap} points, got {size}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        size: usize,
    },
    #[error("search budget must allow at least one node")]
    ZeroBudget,
    #[error("search budget exhausted after {0} nodes")]
    BudgetExhausted(u64),
    #[error("the given set is not a freezing set")]
    NotFreezing,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("invalid lattice symmetry: {0}")]
    InvalidSymmetry(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
