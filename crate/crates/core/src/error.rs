use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed text input; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("time {t} outside lifetime 1..={tau}")]
    TimeOutOfRange { t: u32, tau: u32 },

    #[error("vertex {v} outside 1..={n}")]
    VertexOutOfRange { v: u32, n: u32 },

    #[error("edge {0} is not in the graph")]
    EdgeNotInGraph(Edge),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("exact treewidth refused for {n} vertices (limit {limit})")]
    ExactTooLarge { n: usize, limit: usize },

    #[error("bag too large for the dynamic program: {0}")]
    BagTooLarge(String),

    #[error("graph has an isolated vertex {0}; no edge cover exists")]
    IsolatedVertex(u32),

    #[error("universe is not coverable: element {0} is in no set")]
    NotCoverable(u32),

    #[error("invalid set system: {0}")]
    InvalidSetSystem(String),

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("assignment does not satisfy clause {0}")]
    Unsatisfied(usize),

    #[error("not a temporal edge cover: {0} temporal vertices uncovered")]
    NotACover(usize),

    #[error("dynamic program root entry is infeasible")]
    Infeasible,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
