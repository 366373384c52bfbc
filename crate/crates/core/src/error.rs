use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NetworkError {
    #[error("malformed network file: {0}")]
    Schema(String),
    #[error("p_max must lie in (0, 1), got {0}")]
    InvalidPMax(f64),
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("link #{link} references unknown node {node:?}")]
    DanglingNode { link: usize, node: String },
    #[error("link {0} has non-positive weight")]
    NonPositiveWeight(String),
    #[error("link {link}: failure probability outside open interval (0, p_max={p_max}]: {value}")]
    ProbabilityOutOfRange { link: String, value: f64, p_max: f64 },
    #[error("duplicate directed link {0}")]
    DuplicateLink(String),
    #[error("self-loop {0}")]
    SelfLoop(String),
    #[error("no link {0}")]
    MissingLink(String),
    #[error("path has no nodes")]
    EmptyPath,
    #[error("paths of a connection must share both endpoints")]
    EndpointMismatch,
    #[error("network file declares no source/target")]
    MissingEndpoints,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RoutingError {
    #[error("source and target must differ")]
    SameEndpoints,
    #[error("node {0} is not in the network")]
    UnknownNode(usize),
    #[error("survivability bound must lie in (0, 1], got {0}")]
    InvalidSurvivability(f64),
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("target unreachable from source")]
    Unreachable,
    #[error(transparent)]
    Network(#[from] NetworkError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("more than {cap} simple paths; instance too large for exhaustive search")]
    Overflow { cap: usize },
    #[error(transparent)]
    Routing(#[from] RoutingError),
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid experiment config: {0}")]
    Config(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
