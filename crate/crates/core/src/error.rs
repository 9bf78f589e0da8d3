use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("{what}: order {order} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid label {label} at vertex {vertex} (labels are 0, 1 or 2)")]
    InvalidLabel { vertex: usize, label: u8 },

    #[error("step {step}: attach vertex {vertex} is not in {class}")]
    ClassViolation {
        step: usize,
        vertex: usize,
        class: &'static str,
    },

    #[error("step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },

    #[error("invalid base tree: {0}")]
    InvalidBase(String),

    #[error("size budget {budget} is below the base order {base}")]
    BudgetTooSmall { budget: usize, base: usize },

    #[error("family state does not match the tree: {0}")]
    StateMismatch(String),

    #[error("{0}")]
    Unsupported(String),
}
