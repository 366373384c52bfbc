//! Network model: directed links carrying an integer additive weight and an
//! independent failure probability, plus paths and survivable connections
//! over them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::NetworkError;

pub type NodeId = usize;
pub type LinkId = usize;
/// Additive QoS weight in integer units of the metric.
pub type Weight = u64;

/// Absolute tolerance for every survivability comparison.
pub const SURVIVABILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub from: NodeId,
    pub to: NodeId,
    pub weight: Weight,
    pub fail_prob: f64,
}

impl Link {
    /// `-ln(1 - p)`, the additive form of the link's success probability.
    pub fn log_failure_cost(&self) -> f64 {
        -(-self.fail_prob).ln_1p()
    }
}

/// Immutable directed network.
///
/// Links are validated on construction: `weight > 0` and
/// `0 < fail_prob <= p_max < 1`, with no duplicate ordered node pairs.
/// A network built with `relaxed` validation additionally admits zero
/// weights and probabilities in `(p_max, 1)`; node splitting and the
/// partition reduction produce such networks.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    links: Vec<Link>,
    out: Vec<Vec<LinkId>>,
    inc: Vec<Vec<LinkId>>,
    pair: HashMap<(NodeId, NodeId), LinkId>,
    p_max: f64,
    relaxed: bool,
    source: Option<NodeId>,
    target: Option<NodeId>,
}

/// Serialized network file layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkFile {
    pub nodes: Vec<String>,
    pub links: Vec<LinkRecord>,
    pub p_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub relaxed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub from: String,
    pub to: String,
    pub weight: Weight,
    pub fail_prob: f64,
}

/// Incremental construction of a [`Network`] by node name.
#[derive(Debug, Clone)]
pub struct NetworkBuilder {
    file: NetworkFile,
}

impl NetworkBuilder {
    pub fn new(p_max: f64) -> Self {
        Self {
            file: NetworkFile {
                nodes: Vec::new(),
                links: Vec::new(),
                p_max,
                source: None,
                target: None,
                relaxed: false,
            },
        }
    }

    pub fn relaxed(mut self, relaxed: bool) -> Self {
        self.file.relaxed = relaxed;
        self
    }

    pub fn node(mut self, name: impl Into<String>) -> Self {
        self.file.nodes.push(name.into());
        self
    }

    pub fn nodes<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.file.nodes.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn link(mut self, from: &str, to: &str, weight: Weight, fail_prob: f64) -> Self {
        self.file.links.push(LinkRecord {
            from: from.to_owned(),
            to: to.to_owned(),
            weight,
            fail_prob,
        });
        self
    }

    pub fn endpoints(mut self, source: &str, target: &str) -> Self {
        self.file.source = Some(source.to_owned());
        self.file.target = Some(target.to_owned());
        self
    }

    pub fn build(self) -> Result<Network, NetworkError> {
        Network::from_file(self.file)
    }
}

impl Network {
    pub fn builder(p_max: f64) -> NetworkBuilder {
        NetworkBuilder::new(p_max)
    }

    /// Parses the JSON network file format.
    pub fn parse(bytes: &[u8]) -> Result<Self, NetworkError> {
        let file: NetworkFile =
            serde_json::from_slice(bytes).map_err(|e| NetworkError::Schema(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn from_file(file: NetworkFile) -> Result<Self, NetworkError> {
        if !(file.p_max > 0.0 && file.p_max < 1.0) {
            return Err(NetworkError::InvalidPMax(file.p_max));
        }
        let mut index = HashMap::with_capacity(file.nodes.len());
        for (id, name) in file.nodes.iter().enumerate() {
            if index.insert(name.clone(), id).is_some() {
                return Err(NetworkError::DuplicateNode(name.clone()));
            }
        }
        let lookup = |name: &str, link: usize| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| NetworkError::DanglingNode {
                    link,
                    node: name.to_owned(),
                })
        };
        let mut links = Vec::with_capacity(file.links.len());
        for (id, rec) in file.links.iter().enumerate() {
            let from = lookup(&rec.from, id)?;
            let to = lookup(&rec.to, id)?;
            links.push(Link {
                from,
                to,
                weight: rec.weight,
                fail_prob: rec.fail_prob,
            });
        }
        let source = file.source.as_deref().map(|s| lookup(s, usize::MAX)).transpose()?;
        let target = file.target.as_deref().map(|t| lookup(t, usize::MAX)).transpose()?;
        Self::assemble(file.nodes, index, links, file.p_max, file.relaxed, source, target)
    }

    fn assemble(
        names: Vec<String>,
        index: HashMap<String, NodeId>,
        links: Vec<Link>,
        p_max: f64,
        relaxed: bool,
        source: Option<NodeId>,
        target: Option<NodeId>,
    ) -> Result<Self, NetworkError> {
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut pair = HashMap::with_capacity(links.len());
        for (id, link) in links.iter().enumerate() {
            let describe = || format!("{}->{}", names[link.from], names[link.to]);
            if link.from == link.to {
                return Err(NetworkError::SelfLoop(describe()));
            }
            if link.weight == 0 && !relaxed {
                return Err(NetworkError::NonPositiveWeight(describe()));
            }
            let upper = if relaxed { 1.0 } else { p_max };
            let p = link.fail_prob;
            let in_range = p > 0.0 && (p < upper || (!relaxed && p == upper));
            if !in_range {
                return Err(NetworkError::ProbabilityOutOfRange {
                    link: describe(),
                    value: p,
                    p_max,
                });
            }
            if pair.insert((link.from, link.to), id).is_some() {
                return Err(NetworkError::DuplicateLink(describe()));
            }
            out[link.from].push(id);
            inc[link.to].push(id);
        }
        Ok(Self {
            names,
            index,
            links,
            out,
            inc,
            pair,
            p_max,
            relaxed,
            source,
            target,
        })
    }

    pub fn to_file(&self) -> NetworkFile {
        NetworkFile {
            nodes: self.names.clone(),
            links: self
                .links
                .iter()
                .map(|l| LinkRecord {
                    from: self.names[l.from].clone(),
                    to: self.names[l.to].clone(),
                    weight: l.weight,
                    fail_prob: l.fail_prob,
                })
                .collect(),
            p_max: self.p_max,
            source: self.source.map(|s| self.names[s].clone()),
            target: self.target.map(|t| self.names[t].clone()),
            relaxed: self.relaxed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("network file serializes")
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id]
    }

    pub fn out_links(&self, node: NodeId) -> &[LinkId] {
        &self.out[node]
    }

    pub fn in_links(&self, node: NodeId) -> &[LinkId] {
        &self.inc[node]
    }

    pub fn find_link(&self, from: NodeId, to: NodeId) -> Option<LinkId> {
        self.pair.get(&(from, to)).copied()
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.names[id]
    }

    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    pub fn p_max(&self) -> f64 {
        self.p_max
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn source(&self) -> Option<NodeId> {
        self.source
    }

    pub fn target(&self) -> Option<NodeId> {
        self.target
    }

    /// Source and target declared in the network file.
    pub fn endpoints(&self) -> Result<(NodeId, NodeId), NetworkError> {
        match (self.source, self.target) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => Err(NetworkError::MissingEndpoints),
        }
    }

    pub fn with_endpoints(mut self, source: NodeId, target: NodeId) -> Self {
        assert!(source < self.node_count() && target < self.node_count());
        self.source = Some(source);
        self.target = Some(target);
        self
    }

    /// Minimum network success probability `(1 - p_max)^M`. Relaxed
    /// networks may hold probabilities above `p_max`; the largest one is
    /// used instead.
    pub fn s_min(&self) -> SminBound {
        let worst = self.links.iter().map(|l| l.fail_prob).fold(self.p_max, f64::max);
        SminBound::new(worst, self.link_count())
    }

    /// Splits every node in `node_fail` into an in-node and an out-node
    /// joined by a zero-weight internal link that carries the node's failure
    /// probability. Incoming links end at the in-node, outgoing links start
    /// at the out-node. A split source is entered at its in-node and a split
    /// target is left at its out-node, so the internal links stay on every
    /// connection.
    pub fn split_nodes(&self, node_fail: &BTreeMap<NodeId, f64>) -> Result<Network, NetworkError> {
        if node_fail.is_empty() {
            return Ok(self.clone());
        }
        let mut names = Vec::new();
        let mut entry = vec![0; self.node_count()];
        let mut exit = vec![0; self.node_count()];
        for (v, name) in self.names.iter().enumerate() {
            if node_fail.contains_key(&v) {
                entry[v] = names.len();
                names.push(format!("{name}#in"));
                exit[v] = names.len();
                names.push(format!("{name}#out"));
            } else {
                entry[v] = names.len();
                exit[v] = names.len();
                names.push(name.clone());
            }
        }
        let mut p_max = self.p_max;
        let mut links: Vec<Link> = self
            .links
            .iter()
            .map(|l| Link {
                from: exit[l.from],
                to: entry[l.to],
                ..*l
            })
            .collect();
        for (&v, &p) in node_fail {
            if v >= self.node_count() {
                return Err(NetworkError::DanglingNode {
                    link: usize::MAX,
                    node: v.to_string(),
                });
            }
            if !(p > 0.0 && p < 1.0) {
                return Err(NetworkError::ProbabilityOutOfRange {
                    link: format!("{}#in->{}#out", self.names[v], self.names[v]),
                    value: p,
                    p_max: self.p_max,
                });
            }
            p_max = p_max.max(p);
            links.push(Link {
                from: entry[v],
                to: exit[v],
                weight: 0,
                fail_prob: p,
            });
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Self::assemble(
            names,
            index,
            links,
            p_max,
            true,
            self.source.map(|s| entry[s]),
            self.target.map(|t| exit[t]),
        )
    }
}

/// Lower bound `(1 - p_max)^M` on any connection's survivability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SminBound {
    pub value: f64,
}

impl SminBound {
    pub fn new(p_max: f64, link_count: usize) -> Self {
        Self {
            value: (1.0 - p_max).powi(link_count.max(1) as i32),
        }
    }
}

/// A walk through the network, stored as its node sequence and the links
/// joining consecutive nodes. Algorithm outputs are simple unless flagged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    nodes: Vec<NodeId>,
    links: Vec<LinkId>,
}

impl Path {
    /// The zero-length path sitting at `node`.
    pub fn trivial(node: NodeId) -> Self {
        Self {
            nodes: vec![node],
            links: Vec::new(),
        }
    }

    pub fn from_nodes(net: &Network, nodes: &[NodeId]) -> Result<Self, NetworkError> {
        let Some(&first) = nodes.first() else {
            return Err(NetworkError::EmptyPath);
        };
        let mut links = Vec::with_capacity(nodes.len().saturating_sub(1));
        for w in nodes.windows(2) {
            let id = net.find_link(w[0], w[1]).ok_or_else(|| {
                NetworkError::MissingLink(format!(
                    "{}->{}",
                    net.node_name(w[0]),
                    net.node_name(w[1])
                ))
            })?;
            links.push(id);
        }
        debug_assert_eq!(first, nodes[0]);
        Ok(Self {
            nodes: nodes.to_vec(),
            links,
        })
    }

    pub fn from_names(net: &Network, names: &[&str]) -> Result<Self, NetworkError> {
        let ids = names
            .iter()
            .map(|n| {
                net.node_id(n).ok_or_else(|| NetworkError::DanglingNode {
                    link: usize::MAX,
                    node: (*n).to_owned(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_nodes(net, &ids)
    }

    /// Builds a path from a start node and a chain of links.
    pub fn from_links(net: &Network, start: NodeId, links: &[LinkId]) -> Result<Self, NetworkError> {
        let mut nodes = Vec::with_capacity(links.len() + 1);
        nodes.push(start);
        for &id in links {
            let link = net.link(id);
            if link.from != *nodes.last().unwrap() {
                return Err(NetworkError::MissingLink(format!(
                    "link {} does not continue the path",
                    id
                )));
            }
            nodes.push(link.to);
        }
        Ok(Self {
            nodes,
            links: links.to_vec(),
        })
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn links(&self) -> &[LinkId] {
        &self.links
    }

    pub fn start(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    pub fn hop_count(&self) -> usize {
        self.links.len()
    }

    pub fn weight(&self, net: &Network) -> Weight {
        self.links.iter().map(|&e| net.link(e).weight).sum()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.nodes.iter().all(|n| seen.insert(*n))
    }

    pub fn names<'a>(&self, net: &'a Network) -> Vec<&'a str> {
        self.nodes.iter().map(|&n| net.node_name(n)).collect()
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn extend(&mut self, other: &Path) {
        debug_assert_eq!(self.end(), other.start());
        self.nodes.extend_from_slice(&other.nodes[1..]);
        self.links.extend_from_slice(&other.links);
    }
}

/// Ordered pair of source-destination paths; the two may coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurvivableConnection {
    pub first: Path,
    pub second: Path,
}

impl SurvivableConnection {
    pub fn new(first: Path, second: Path) -> Result<Self, NetworkError> {
        if first.start() != second.start() || first.end() != second.end() {
            return Err(NetworkError::EndpointMismatch);
        }
        Ok(Self { first, second })
    }

    /// Links common to both paths.
    pub fn critical_links(&self) -> BTreeSet<LinkId> {
        let a: BTreeSet<LinkId> = self.first.links().iter().copied().collect();
        self.second
            .links()
            .iter()
            .copied()
            .filter(|e| a.contains(e))
            .collect()
    }

    pub fn survivability(&self, net: &Network) -> f64 {
        survivability_level(net, self)
    }

    pub fn co_weight(&self, net: &Network) -> Weight {
        co_weight(net, self)
    }

    pub fn ct_weight(&self, net: &Network) -> Weight {
        ct_weight(net, self)
    }

    pub fn is_simple(&self) -> bool {
        self.first.is_simple() && self.second.is_simple()
    }

    pub fn max_path_weight(&self, net: &Network) -> Weight {
        self.first.weight(net).max(self.second.weight(net))
    }
}

/// Product of `(1 - p_e)` over the critical links; 1 when the paths are
/// link-disjoint.
pub fn survivability_level(net: &Network, conn: &SurvivableConnection) -> f64 {
    conn.critical_links()
        .into_iter()
        .map(|e| 1.0 - net.link(e).fail_prob)
        .product()
}

/// Weight counting each link of the union once.
pub fn co_weight(net: &Network, conn: &SurvivableConnection) -> Weight {
    let union: BTreeSet<LinkId> = conn
        .first
        .links()
        .iter()
        .chain(conn.second.links())
        .copied()
        .collect();
    union.into_iter().map(|e| net.link(e).weight).sum()
}

/// Weight counting common links twice: `W(first) + W(second)`.
pub fn ct_weight(net: &Network, conn: &SurvivableConnection) -> Weight {
    conn.first.weight(net) + conn.second.weight(net)
}
