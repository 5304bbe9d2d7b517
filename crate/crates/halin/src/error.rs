use thiserror::Error;

/// Errors produced by instance validation, generators and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HalinError {
    /// The tree contains a vertex of degree two, which the data model forbids.
    #[error("DegreeTwoVertex: vertex {0} has tree degree two")]
    DegreeTwoVertex(u32),

    /// Fewer than three leaves; no cycle can be formed.
    #[error("TooFewLeaves: instance has {0} leaves, at least 3 required")]
    TooFewLeaves(usize),

    /// The node list does not describe a rooted tree.
    #[error("MalformedTree: {0}")]
    MalformedTree(String),

    /// A vertex id that does not exist in the instance.
    #[error("UnknownVertex: no vertex with id {0}")]
    UnknownVertex(u32),

    /// An operation that requires a cubic instance was given a non-cubic one.
    #[error("NotCubic: internal vertex {id} has tree degree {degree}")]
    NotCubic { id: u32, degree: u32 },

    /// Invalid argument to a generator or closed form.
    #[error("BadArgument: {0}")]
    BadArgument(String),

    /// An edge index outside the instance's edge list.
    #[error("InvalidEdgeIndex: {0}")]
    InvalidEdgeIndex(u32),

    /// The exact solver exceeded its node exploration budget. This signals
    /// an instance too large for the oracle, not a wrong answer.
    #[error("BudgetExceeded: explored {0} nodes")]
    BudgetExceeded(u64),

    /// A coloring was expected to be complete but is not.
    #[error("IncompleteColoring: edge {0} has no color")]
    IncompleteColoring(u32),

    /// The requested solve method cannot run on this instance.
    #[error("MethodInapplicable: {0}")]
    MethodInapplicable(String),
}

pub type Result<T> = std::result::Result<T, HalinError>;
