//! Links lying on every weight-shortest path between two nodes.

use serde::Serialize;

use crate::error::RoutingError;
use crate::graph::{LinkId, Network, NodeId, Path, Weight};
use crate::paths::{shortest_distance, shortest_path};

/// Links common to all weight-shortest s-t paths, in path order. Only these
/// links can be shared by the two paths of an optimal CT connection, so
/// they are the only upgrade candidates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalCandidateSet {
    pub links: Vec<LinkId>,
    pub base_shortest_weight: Weight,
    #[serde(skip)]
    pub path: Path,
}

impl CriticalCandidateSet {
    pub fn contains(&self, link: LinkId) -> bool {
        self.links.contains(&link)
    }
}

/// Removes each link of one shortest path in turn; the link belongs to every
/// shortest path iff the shortest weight then grows or the target is cut off.
pub fn iawspl(net: &Network, s: NodeId, t: NodeId) -> Result<CriticalCandidateSet, RoutingError> {
    for v in [s, t] {
        if v >= net.node_count() {
            return Err(RoutingError::UnknownNode(v));
        }
    }
    let (path, base) = shortest_path(net, s, t).ok_or(RoutingError::Unreachable)?;
    let links = path
        .links()
        .iter()
        .copied()
        .filter(|&e| shortest_distance(net, s, t, |x| x != e).is_none_or(|w| w > base))
        .collect();
    Ok(CriticalCandidateSet {
        links,
        base_shortest_weight: base,
        path,
    })
}
