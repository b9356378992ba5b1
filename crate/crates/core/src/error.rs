use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operands live in different state spaces")]
    SpaceMismatch,

    #[error("dimension {dim} exceeds the enumeration cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("support function is unbounded on the simplex (no facet with normal e_{state})")]
    UnboundedSupport { state: usize },

    #[error("invalid belief: {0}")]
    InvalidBelief(String),

    #[error("invalid state space: {0}")]
    InvalidStateSpace(String),

    #[error("invalid information structure: {0}")]
    InvalidInfoStructure(String),

    #[error("invalid partition: {0}")]
    PartitionError(String),

    #[error("{count} signals exceed the refinement search cap of {cap}")]
    SignalCap { count: usize, cap: usize },

    #[error("the coarse structure is not a garbling of the fine one")]
    NotARefinement,

    #[error("value function failed the midpoint convexity test at {left:?} / {right:?}")]
    NotConvex { left: Vec<f64>, right: Vec<f64> },

    #[error("no generator of L satisfies the nested-region condition for the added act")]
    NoQualifyingGenerator,

    #[error("cannot mix polyhedral and numeric value functions")]
    ModeMismatch,

    #[error("operation requires a nonempty set")]
    EmptySet,

    #[error("internal identity check failed: {0}")]
    IdentityViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
