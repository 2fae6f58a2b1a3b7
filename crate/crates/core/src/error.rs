use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SteinerError {
    #[error("coordinate is not finite: ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("duplicate input points at indices {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("at least {required} points are required, got {got}")]
    TooFewPoints { required: usize, got: usize },
    #[error("direction vector must be finite and nonzero")]
    BadDirection,
    #[error("invalid parameter range [{0}, {1}]")]
    BadRange(f64, f64),
    #[error("parameter {t} lies outside [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },
    #[error("cone membership is undefined at the apex")]
    ApexQuery,
    #[error("vertex {0} is out of bounds")]
    VertexOutOfBounds(usize),
    #[error("query vertices must be distinct")]
    SameVertex,
    #[error("({0}, {1}) is not an edge of the tree")]
    NotATreeEdge(usize, usize),
    #[error("input edges do not form a spanning tree")]
    NotASpanningTree,
    #[error("neighbor set must contain 3 or 4 terminals, got {0}")]
    BadNeighborCount(usize),
    #[error("invalid forest: {0}")]
    InvalidForest(&'static str),
    #[error("k must be 1 or 2, got {0}")]
    UnsupportedK(usize),
    #[error("at least one constraint line is required")]
    NoConstraints,
    #[error("tree has no edges")]
    EmptyTree,
    #[error("invalid cost specification: {0}")]
    BadCostSpec(String),
    #[error("triangulation failed: {0}")]
    Triangulation(String),
}

pub type Result<T, E = SteinerError> = std::result::Result<T, E>;
