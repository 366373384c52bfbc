//! Survivable routing with a tunable survivability level under additive QoS
//! metrics.
//!
//! A survivable connection is a pair of source-destination paths. Its
//! survivability is the probability that every link common to both paths
//! survives, and its weight counts common links once (CO) or twice (CT).
//! The crate solves the resulting bi-criteria routing problems exactly and
//! approximately, finds the links that can be critical in optimal
//! connections, allocates upgrade budgets over them, and runs the random
//! topology experiments.

pub mod critical;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod paths;
pub mod report;
pub mod routing;
pub mod rsp;
pub mod sim;
pub mod topology;
pub mod upgrade;

pub use error::{ExperimentError, NetworkError, OracleError, RoutingError};
pub use graph::{
    co_weight, ct_weight, survivability_level, Link, LinkId, LinkRecord, Network, NetworkFile, NodeId, Path,
    SurvivableConnection, Weight, SURVIVABILITY_TOLERANCE,
};
