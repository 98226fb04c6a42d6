use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("loop at vertex {0} in input")]
    LoopInInput(usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("invalid edge data: {0}")]
    InvalidEdge(String),

    #[error("format {format} cannot represent this graph: {reason}")]
    UnsupportedFormat {
        format: &'static str,
        reason: String,
    },

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("subgraph does not fit inside the host graph: {0}")]
    SubgraphMismatch(String),

    #[error("edge {0} does not exist")]
    MissingEdge(usize),

    #[error("size bound exceeded: {what} is {actual}, limit {limit}")]
    BoundExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("pattern graph has {h} vertices but host has only {g}")]
    PatternTooLarge { h: usize, g: usize },

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("functional undefined on spectrum: {0}")]
    Domain(String),

    #[error("cover is not regular: {0}")]
    IrregularCover(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("unknown inequality id `{0}`")]
    UnknownId(String),

    #[error("missing or invalid parameter: {0}")]
    Param(String),

    #[error("pair generator exhausted {0} attempts")]
    AttemptsExhausted(usize),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
