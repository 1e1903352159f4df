use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {order} vertices")]
    InvalidVertex { vertex: usize, order: usize },

    #[error("the graph has no vertices")]
    EmptyGraph,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph on {order} vertices exceeds the cap of {cap} for {operation}")]
    Capacity {
        operation: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("complete graphs have no vertex cut")]
    NoCut,

    #[error("random generation failed after {attempts} attempts ({params})")]
    GenerationFailed { params: String, attempts: usize },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("schema error in field `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
