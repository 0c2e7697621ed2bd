use thiserror::Error;

/// Errors raised by the geometric constructions and analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("region is not convex")]
    NotConvex,
    #[error("polygon is not concave")]
    NotConcave,
    #[error("polyhedron is not a closed, consistently oriented surface: {0}")]
    NotClosed(String),
    #[error("point ({0}) is not strictly inside the region")]
    OutsideRegion(String),
    #[error("the distance-sum functional is constant on this region")]
    CvsRegion,
    #[error("partition has no interior edge between adjacent cells")]
    NoInteriorEdge,
}

pub type Result<T> = std::result::Result<T, Error>;
