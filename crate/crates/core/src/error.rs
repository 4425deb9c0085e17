use thiserror::Error;

/// Problems found while reading or validating an arena description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArenaError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate state `{name}`")]
    DuplicateState { line: usize, name: String },
    #[error("line {line}: unknown state `{name}`")]
    UnknownState { line: usize, name: String },
    #[error("state `{0}` has no outgoing edge")]
    MissingOutgoingEdge(String),
    #[error("no initial state declared")]
    NoInitialState,
    #[error("more than one initial state declared (`{0}` and `{1}`)")]
    MultipleInitialStates(String, String),
    #[error("invalid JSON arena: {0}")]
    Json(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
}

/// Errors raised by the solvers when a query is ill-formed or too large.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("bound inversion: {low_name}={low} exceeds {high_name}={high}")]
    BoundInversion {
        low_name: &'static str,
        low: i64,
        high_name: &'static str,
        high: i64,
    },
    #[error("violation bound must be non-negative, got {0}")]
    NegativeViolationBound(i64),
    #[error("missing parameter `{0}` for constraint kind {1}")]
    MissingParameter(&'static str, &'static str),
    #[error("reachability objective requires a non-empty target set")]
    NoTargets,
    #[error("operation requires a one-player arena (state `{0}` is owned by player 2)")]
    NotOnePlayer(String),
    #[error("instance too large: {what} would exceed the limit of {limit}")]
    TooLarge { what: &'static str, limit: u64 },
    #[error("{0}")]
    Unsupported(String),
}
