//! Survivable connection routing through a transformed bi-metric network.
//!
//! Every survivable connection decomposes into segments where both paths
//! share a link and segments where the paths run link-disjoint. The
//! transformed network has one "simple" link per original link (the shared
//! case) and one "disjoint" link per node pair admitting an edge-disjoint
//! pair (the split case). A restricted shortest path over it trades the
//! summed weight against the summed `-ln(1 - p)` of the shared links.

use serde_json::{json, Value};

use crate::error::RoutingError;
use crate::graph::{LinkId, Network, NodeId, Path, SurvivableConnection, Weight, SURVIVABILITY_TOLERANCE};
use crate::paths::{edsp, shortest_path, Edsp};
use crate::rsp::{rsp_exact, rsp_exact_integer_lengths, rsp_fptas, BiMetricGraph, RspSolution, TimeGrid};

/// How the weight of a connection counts its common links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Common links counted once.
    Co,
    /// Common links counted twice.
    Ct,
}

impl Variant {
    pub fn weight(self, net: &Network, conn: &SurvivableConnection) -> Weight {
        match self {
            Variant::Co => conn.co_weight(net),
            Variant::Ct => conn.ct_weight(net),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Co => "co",
            Variant::Ct => "ct",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveMode {
    Exact,
    Fptas { epsilon: f64 },
}

impl SolveMode {
    fn validate(self) -> Result<(), RoutingError> {
        match self {
            SolveMode::Fptas { epsilon } if !(epsilon > 0.0 && epsilon.is_finite()) => {
                Err(RoutingError::InvalidEpsilon(epsilon))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TransformedLink {
    Simple(LinkId),
    Disjoint(Edsp),
}

/// Bi-metric graph whose links have `length` = weight contribution and
/// `time` = `-ln` of the survivability contribution.
#[derive(Debug, Clone)]
pub struct TransformedNetwork {
    pub variant: Variant,
    pub graph: BiMetricGraph,
    pub tags: Vec<TransformedLink>,
    /// Original node of every transformed node.
    pub nodes: Vec<NodeId>,
    /// Shortest path the CT variant is restricted to.
    pub pi_min: Option<Path>,
    source: NodeId,
    weights: Vec<Weight>,
}

fn check_endpoints(net: &Network, s: NodeId, t: NodeId) -> Result<(), RoutingError> {
    for v in [s, t] {
        if v >= net.node_count() {
            return Err(RoutingError::UnknownNode(v));
        }
    }
    if s == t {
        return Err(RoutingError::SameEndpoints);
    }
    Ok(())
}

impl TransformedNetwork {
    /// CO: every node and link of `net`. CT: only the nodes and links of one
    /// shortest s-t path; disjoint pairs are still searched in all of `net`.
    pub fn build(net: &Network, s: NodeId, t: NodeId, variant: Variant) -> Result<Self, RoutingError> {
        check_endpoints(net, s, t)?;
        let (pi_min, _) = shortest_path(net, s, t).ok_or(RoutingError::Unreachable)?;
        match variant {
            Variant::Co => {
                let nodes: Vec<NodeId> = (0..net.node_count()).collect();
                let links: Vec<LinkId> = (0..net.link_count()).collect();
                Ok(Self::assemble(net, s, t, variant, nodes, &links, None))
            }
            Variant::Ct => {
                let nodes = pi_min.nodes().to_vec();
                let links = pi_min.links().to_vec();
                Ok(Self::assemble(net, s, t, variant, nodes, &links, Some(pi_min)))
            }
        }
    }

    /// CT transformation over the whole network, without the shortest-path
    /// restriction. Used to confirm the restriction loses nothing.
    pub fn build_unrestricted_ct(net: &Network, s: NodeId, t: NodeId) -> Result<Self, RoutingError> {
        check_endpoints(net, s, t)?;
        shortest_path(net, s, t).ok_or(RoutingError::Unreachable)?;
        let nodes: Vec<NodeId> = (0..net.node_count()).collect();
        let links: Vec<LinkId> = (0..net.link_count()).collect();
        Ok(Self::assemble(net, s, t, Variant::Ct, nodes, &links, None))
    }

    fn assemble(
        net: &Network,
        s: NodeId,
        t: NodeId,
        variant: Variant,
        nodes: Vec<NodeId>,
        simple: &[LinkId],
        pi_min: Option<Path>,
    ) -> Self {
        let mut local = vec![usize::MAX; net.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let mut graph = BiMetricGraph::new(nodes.len(), local[s], local[t]);
        let mut tags = Vec::new();
        let mut weights = Vec::new();
        let factor = match variant {
            Variant::Co => 1,
            Variant::Ct => 2,
        };
        for &e in simple {
            let link = net.link(e);
            let w = factor * link.weight;
            graph.add_link(local[link.from], local[link.to], w as f64, link.log_failure_cost());
            tags.push(TransformedLink::Simple(e));
            weights.push(w);
        }
        for &u in &nodes {
            for &v in &nodes {
                if u == v {
                    continue;
                }
                if let Some(pair) = edsp(net, u, v) {
                    graph.add_link(local[u], local[v], pair.total_weight as f64, 0.0);
                    weights.push(pair.total_weight);
                    tags.push(TransformedLink::Disjoint(pair));
                }
            }
        }
        Self {
            variant,
            graph,
            tags,
            nodes,
            pi_min,
            source: s,
            weights,
        }
    }

    pub fn simple_link_count(&self) -> usize {
        self.tags
            .iter()
            .filter(|t| matches!(t, TransformedLink::Simple(_)))
            .count()
    }

    pub fn disjoint_link_count(&self) -> usize {
        self.tags.len() - self.simple_link_count()
    }

    /// Integer weight of a transformed link.
    pub fn weight(&self, link: usize) -> Weight {
        self.weights[link]
    }

    /// Expands a transformed s-t path: simple links join both paths, each
    /// disjoint link contributes one of its pair to each path.
    pub fn reconstruct(&self, net: &Network, links: &[usize]) -> Result<SurvivableConnection, RoutingError> {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for &l in links {
            match &self.tags[l] {
                TransformedLink::Simple(e) => {
                    first.push(*e);
                    second.push(*e);
                }
                TransformedLink::Disjoint(pair) => {
                    first.extend_from_slice(pair.path_a.links());
                    second.extend_from_slice(pair.path_b.links());
                }
            }
        }
        let first = Path::from_links(net, self.source, &first)?;
        let second = Path::from_links(net, self.source, &second)?;
        Ok(SurvivableConnection::new(first, second)?)
    }

    fn answer(&self, net: &Network, sol: &RspSolution) -> Result<RoutingAnswer, RoutingError> {
        let connection = self.reconstruct(net, &sol.links)?;
        let claimed_weight: Weight = sol.links.iter().map(|&l| self.weights[l]).sum();
        let time: f64 = sol.links.iter().map(|&l| self.graph.link(l).time).sum();
        Ok(RoutingAnswer::new(net, self.variant, connection, claimed_weight, (-time).exp()))
    }

    /// Maximum survivability subject to weight at most `budget`.
    pub fn qamsc(&self, net: &Network, budget: Weight, mode: SolveMode) -> Result<Option<RoutingAnswer>, RoutingError> {
        mode.validate()?;
        // no simple path can use more than the total weight
        let budget = budget.min(self.weights.iter().sum());
        let swapped = swap_metrics(&self.graph);
        let sol = match mode {
            SolveMode::Exact => rsp_exact(&swapped, budget as f64, TimeGrid::unit()),
            SolveMode::Fptas { epsilon } => {
                let eta = (1.0 + epsilon).ln() / -net.s_min().value.ln();
                rsp_fptas(&swapped, budget as f64, eta)
            }
        };
        sol.map(|sol| self.answer(net, &sol)).transpose()
    }

    /// Minimum weight subject to survivability at least `survivability`.
    pub fn tscmq(
        &self,
        net: &Network,
        survivability: f64,
        mode: SolveMode,
    ) -> Result<Option<RoutingAnswer>, RoutingError> {
        mode.validate()?;
        if !(survivability > 0.0 && survivability <= 1.0) {
            return Err(RoutingError::InvalidSurvivability(survivability));
        }
        let budget = -survivability.ln();
        let sol = match mode {
            SolveMode::Exact => rsp_exact_integer_lengths(&self.graph, budget),
            SolveMode::Fptas { epsilon } => rsp_fptas(&self.graph, budget, epsilon),
        };
        sol.map(|sol| self.answer(net, &sol)).transpose()
    }
}

fn swap_metrics(g: &BiMetricGraph) -> BiMetricGraph {
    let mut out = BiMetricGraph::new(g.node_count(), g.source, g.target);
    for l in g.links() {
        out.add_link(l.from, l.to, l.time, l.length);
    }
    out
}

/// A computed connection with metrics recomputed from its paths.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutingAnswer {
    pub variant: Variant,
    pub connection: SurvivableConnection,
    pub survivability: f64,
    pub co_weight: Weight,
    pub ct_weight: Weight,
    /// Both paths visit every node at most once.
    pub simple_paths: bool,
    /// Weight and survivability as accounted by the solver on the
    /// transformed network.
    pub claimed_weight: Weight,
    pub claimed_survivability: f64,
}

impl RoutingAnswer {
    fn new(
        net: &Network,
        variant: Variant,
        connection: SurvivableConnection,
        claimed_weight: Weight,
        claimed_survivability: f64,
    ) -> Self {
        Self {
            variant,
            survivability: connection.survivability(net),
            co_weight: connection.co_weight(net),
            ct_weight: connection.ct_weight(net),
            simple_paths: connection.is_simple(),
            connection,
            claimed_weight,
            claimed_survivability,
        }
    }

    /// Weight under the answer's own variant.
    pub fn weight(&self) -> Weight {
        match self.variant {
            Variant::Co => self.co_weight,
            Variant::Ct => self.ct_weight,
        }
    }

    /// Recomputed metrics agree with the solver's accounting.
    pub fn is_consistent(&self) -> bool {
        self.weight() == self.claimed_weight
            && (self.survivability - self.claimed_survivability).abs() <= SURVIVABILITY_TOLERANCE
    }

    pub fn to_json(&self, net: &Network) -> Value {
        json!({
            "variant": self.variant.name(),
            "first": self.connection.first.names(net),
            "second": self.connection.second.names(net),
            "critical_links": self
                .connection
                .critical_links()
                .into_iter()
                .map(|e| format!("{}->{}", net.node_name(net.link(e).from), net.node_name(net.link(e).to)))
                .collect::<Vec<_>>(),
            "survivability": self.survivability,
            "co_weight": self.co_weight,
            "ct_weight": self.ct_weight,
            "first_weight": self.connection.first.weight(net),
            "second_weight": self.connection.second.weight(net),
            "simple_paths": self.simple_paths,
        })
    }
}

pub fn build_transformed(
    net: &Network,
    s: NodeId,
    t: NodeId,
    variant: Variant,
) -> Result<TransformedNetwork, RoutingError> {
    TransformedNetwork::build(net, s, t, variant)
}

fn unreachable_as_none<T>(r: Result<T, RoutingError>) -> Result<Option<T>, RoutingError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(RoutingError::Unreachable) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Maximum-survivability connection with weight at most `budget`; `None`
/// when no connection fits the budget.
pub fn qamsc(
    net: &Network,
    s: NodeId,
    t: NodeId,
    budget: Weight,
    variant: Variant,
    mode: SolveMode,
) -> Result<Option<RoutingAnswer>, RoutingError> {
    match unreachable_as_none(TransformedNetwork::build(net, s, t, variant))? {
        Some(tn) => tn.qamsc(net, budget, mode),
        None => Ok(None),
    }
}

/// Minimum-weight connection with survivability at least `survivability`;
/// `None` when even the most survivable connection falls short.
pub fn tscmq(
    net: &Network,
    s: NodeId,
    t: NodeId,
    survivability: f64,
    variant: Variant,
    mode: SolveMode,
) -> Result<Option<RoutingAnswer>, RoutingError> {
    match unreachable_as_none(TransformedNetwork::build(net, s, t, variant))? {
        Some(tn) => tn.tscmq(net, survivability, mode),
        None => Ok(None),
    }
}

/// Min-max connection within a factor of two: the CT min-sum connection,
/// ordered so the lighter path comes first.
pub fn csmmq_2approx(
    net: &Network,
    s: NodeId,
    t: NodeId,
    survivability: f64,
    mode: SolveMode,
) -> Result<Option<RoutingAnswer>, RoutingError> {
    let answer = tscmq(net, s, t, survivability, Variant::Ct, mode)?;
    Ok(answer.map(|mut a| {
        if a.connection.first.weight(net) > a.connection.second.weight(net) {
            std::mem::swap(&mut a.connection.first, &mut a.connection.second);
        }
        a
    }))
}

/// Whether a connection with weight at most `budget` and survivability at
/// least `survivability` exists; returns a witness if so.
pub fn rwsc(
    net: &Network,
    s: NodeId,
    t: NodeId,
    budget: f64,
    survivability: f64,
    variant: Variant,
) -> Result<Option<RoutingAnswer>, RoutingError> {
    let best = tscmq(net, s, t, survivability, variant, SolveMode::Exact)?;
    Ok(best.filter(|a| a.weight() as f64 <= budget))
}
