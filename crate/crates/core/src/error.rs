use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has {0} vertices, capacity is {max}", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("edge endpoint {vertex} out of range for a graph on {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("pattern has {size} vertices, at most {max} are supported")]
    PatternTooLarge { size: usize, max: usize },

    #[error("graph has {size} vertices, operation is limited to {max}")]
    SizeExceeded { size: usize, max: usize },

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters {
        family: &'static str,
        reason: String,
    },

    #[error("vertices {0} and {1} must be distinct and non-adjacent")]
    NotSymmetrizable(usize, usize),

    #[error("vertex set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),

    #[error("malformed graph6 input: {0}")]
    Graph6(String),

    #[error("malformed edge list: {0}")]
    EdgeList(String),

    #[error("i/o failure: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
