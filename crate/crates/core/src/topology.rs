//! Random topologies and link attributes for the simulation study, the
//! partition reduction instances, and small random networks for testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::graph::{LinkRecord, Network, NetworkFile, NodeId, Weight};
use crate::paths::distances;

/// Failure probability bound used for generated networks.
pub const DEFAULT_P_MAX: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum TopologyModel {
    #[serde(rename = "powerlaw")]
    PowerLaw { alpha: f64, beta: f64 },
    Waxman { alpha: f64, beta: f64 },
}

impl TopologyModel {
    pub fn power_law() -> Self {
        TopologyModel::PowerLaw {
            alpha: 0.756,
            beta: 100.0,
        }
    }

    pub fn waxman() -> Self {
        TopologyModel::Waxman { alpha: 1.8, beta: 0.05 }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TopologyModel::PowerLaw { .. } => "powerlaw",
            TopologyModel::Waxman { .. } => "waxman",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "powerlaw" => Some(Self::power_law()),
            "waxman" => Some(Self::waxman()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopologyConfig {
    pub model: TopologyModel,
    pub n_nodes: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkAttrConfig {
    /// Probability that a link is fast.
    pub omega: f64,
    pub p_max: f64,
    pub seed: u64,
}

impl LinkAttrConfig {
    pub fn new(omega: f64, seed: u64) -> Self {
        Self {
            omega,
            p_max: DEFAULT_P_MAX,
            seed,
        }
    }
}

/// Topology before attributes: node count, directed pairs, endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub n_nodes: usize,
    pub pairs: Vec<(NodeId, NodeId)>,
    pub source: NodeId,
    pub target: NodeId,
    /// Node coordinates in the unit square, for geometric models.
    pub positions: Option<Vec<(f64, f64)>>,
}

impl Topology {
    /// Network with unit weights and failure probability 0.01 everywhere.
    pub fn to_network(&self) -> Network {
        let attrs = vec![(1, 0.01); self.pairs.len()];
        self.with_attrs(&attrs, DEFAULT_P_MAX)
    }

    fn with_attrs(&self, attrs: &[(Weight, f64)], p_max: f64) -> Network {
        let name = |v: NodeId| v.to_string();
        let file = NetworkFile {
            nodes: (0..self.n_nodes).map(name).collect(),
            links: self
                .pairs
                .iter()
                .zip(attrs)
                .map(|(&(u, v), &(weight, fail_prob))| LinkRecord {
                    from: name(u),
                    to: name(v),
                    weight,
                    fail_prob,
                })
                .collect(),
            p_max,
            source: Some(name(self.source)),
            target: Some(name(self.target)),
            relaxed: false,
        };
        Network::from_file(file).expect("generated topology is valid")
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn generate(cfg: &TopologyConfig) -> Topology {
    assert!(cfg.n_nodes >= 2, "at least two nodes are required");
    match cfg.model {
        TopologyModel::PowerLaw { alpha, beta } => power_law_topology(cfg.n_nodes, alpha, beta, cfg.seed),
        TopologyModel::Waxman { alpha, beta } => waxman_topology(cfg.n_nodes, alpha, beta, cfg.seed),
    }
}

/// Out-degree credits `floor(beta * x^-alpha)` with `x` uniform in
/// `1..=n`, spent by random pairing. The source is the node of largest
/// out-degree, the target the node of largest in-degree reachable from it
/// (lowest id on ties).
fn power_law_topology(n: usize, alpha: f64, beta: f64, seed: u64) -> Topology {
    let mut rng = rng_for(seed, 0);
    let mut credit: Vec<usize> = (0..n)
        .map(|_| {
            let x = rng.random_range(1..=n) as f64;
            (beta * x.powf(-alpha)).floor() as usize
        })
        .collect();
    let mut exists = vec![false; n * n];
    let mut pairs = Vec::new();
    let mut active: Vec<NodeId> = (0..n).filter(|&v| credit[v] > 0).collect();
    let mut failures = 0usize;
    let max_failures = 50 * n * n;
    while !active.is_empty() && failures < max_failures {
        let i = rng.random_range(0..active.len());
        let u = active[i];
        let v = rng.random_range(0..n);
        if u == v || exists[u * n + v] {
            failures += 1;
            continue;
        }
        exists[u * n + v] = true;
        pairs.push((u, v));
        credit[u] -= 1;
        if credit[u] == 0 {
            active.swap_remove(i);
        }
    }

    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    for &(u, v) in &pairs {
        out_deg[u] += 1;
        in_deg[v] += 1;
    }
    let source = argmax(n, |v| out_deg[v], |_| true).expect("n >= 2");
    let probe = Topology {
        n_nodes: n,
        pairs: pairs.clone(),
        source,
        target: (source + 1) % n,
        positions: None,
    }
    .to_network();
    let reach = distances(&probe, source, false, |_| true);
    let target = argmax(n, |v| in_deg[v], |v| v != source && reach[v].is_some())
        .or_else(|| argmax(n, |v| in_deg[v], |v| v != source))
        .expect("n >= 2");
    Topology {
        n_nodes: n,
        pairs,
        source,
        target,
        positions: None,
    }
}

fn argmax<K, F>(n: usize, key: K, keep: F) -> Option<NodeId>
where
    K: Fn(NodeId) -> usize,
    F: Fn(NodeId) -> bool,
{
    (0..n)
        .filter(|&v| keep(v))
        .max_by(|&a, &b| key(a).cmp(&key(b)).then(b.cmp(&a)))
}

/// Nodes uniform in the unit square except the source at `(0, 0)` and the
/// target at `(1, 1)`; each ordered pair linked with probability
/// `min(1, alpha * exp(-d / (beta * sqrt 2)))`.
fn waxman_topology(n: usize, alpha: f64, beta: f64, seed: u64) -> Topology {
    let mut rng = rng_for(seed, 0);
    let mut positions = vec![(0.0, 0.0), (1.0, 1.0)];
    for _ in 2..n {
        positions.push((rng.random::<f64>(), rng.random::<f64>()));
    }
    let scale = beta * std::f64::consts::SQRT_2;
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let (dx, dy) = (positions[u].0 - positions[v].0, positions[u].1 - positions[v].1);
            let p = waxman_probability(alpha, scale, dx.hypot(dy));
            if rng.random::<f64>() < p {
                pairs.push((u, v));
            }
        }
    }
    Topology {
        n_nodes: n,
        pairs,
        source: 0,
        target: 1,
        positions: Some(positions),
    }
}

fn waxman_probability(alpha: f64, scale: f64, distance: f64) -> f64 {
    (alpha * (-distance / scale).exp()).min(1.0)
}

pub fn gen_power_law(n_nodes: usize, seed: u64) -> Network {
    generate(&TopologyConfig {
        model: TopologyModel::power_law(),
        n_nodes,
        seed,
    })
    .to_network()
}

pub fn gen_waxman(n_nodes: usize, seed: u64) -> Network {
    generate(&TopologyConfig {
        model: TopologyModel::waxman(),
        n_nodes,
        seed,
    })
    .to_network()
}

/// Draws fresh delays and failure probabilities for every link: fast links
/// (probability `omega`) get a delay uniform in `1..=5`, slow ones 100;
/// failure probabilities are Normal(0.01, 0.003), resampled until they fall
/// in `(0, p_max]`.
pub fn assign_attrs(net: &Network, cfg: &LinkAttrConfig) -> Network {
    assert!((0.0..=1.0).contains(&cfg.omega), "omega must lie in [0, 1]");
    let mut rng = rng_for(cfg.seed, 1);
    let normal = Normal::new(0.01, 0.003).expect("valid normal");
    let mut file = net.to_file();
    file.p_max = cfg.p_max;
    for link in &mut file.links {
        link.weight = if rng.random_bool(cfg.omega) {
            rng.random_range(1..=5)
        } else {
            100
        };
        link.fail_prob = loop {
            let p: f64 = normal.sample(&mut rng);
            if p > 0.0 && p <= cfg.p_max {
                break p;
            }
        };
    }
    Network::from_file(file).expect("attributes stay within bounds")
}

/// Topology plus attributes, as used by the experiments.
pub fn generate_network(cfg: &TopologyConfig, omega: f64) -> Network {
    let topo = generate(cfg);
    assign_attrs(&topo.to_network(), &LinkAttrConfig::new(omega, cfg.seed))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionInstance {
    pub network: Network,
    pub budget: f64,
    pub survivability: f64,
}

/// Chain `a_0 .. a_k` with two links per element: an upper link of weight 0
/// and failure probability `1 - e^-s`, and a lower link of weight `s` and
/// failure probability `M = (1 + q) / 2` where `q` is the largest upper
/// probability. A CT connection with weight at most `T/2` and survivability
/// at least `e^(-T/2)` exists iff the sizes split into two equal halves.
///
/// The network is relaxed: it needs zero weights and two links per node
/// pair, so the lower link of each element runs through a midpoint node
/// `b_i` with a zero-weight, near-zero-failure second hop.
pub fn partition_instance(sizes: &[u64]) -> PartitionInstance {
    assert!(!sizes.is_empty(), "sizes must be non-empty");
    assert!(sizes.iter().all(|&s| s > 0), "sizes must be positive");
    let upper: Vec<f64> = sizes.iter().map(|&s| -(-(s as f64)).exp_m1()).collect();
    let q = upper.iter().copied().fold(0.0, f64::max);
    let m = (1.0 + q) / 2.0;
    let mut builder = Network::builder(q).relaxed(true);
    let k = sizes.len();
    for i in 0..=k {
        builder = builder.node(format!("a{i}"));
    }
    for i in 0..k {
        builder = builder.node(format!("b{i}"));
    }
    for (i, (&s, &p)) in sizes.iter().zip(&upper).enumerate() {
        let (a, b, next) = (format!("a{i}"), format!("b{i}"), format!("a{}", i + 1));
        builder = builder
            .link(&a, &next, 0, p)
            .link(&a, &b, s, m)
            .link(&b, &next, 0, PARTITION_BRIDGE_FAIL);
    }
    let total: u64 = sizes.iter().sum();
    let network = builder
        .endpoints("a0", &format!("a{k}"))
        .build()
        .expect("partition instance is valid");
    PartitionInstance {
        network,
        budget: total as f64 / 2.0,
        survivability: (-(total as f64) / 2.0).exp(),
    }
}

/// Failure probability of the zero-weight second hop of each lower route.
/// Small enough that sharing it never matters: every element contributes at
/// least `1 - e^-1` to the survivability exponent.
const PARTITION_BRIDGE_FAIL: f64 = 1e-12;

/// Random digraph on `n_nodes` nodes: every ordered pair is linked with
/// probability `density`, weights uniform in `1..=10`, failure
/// probabilities uniform in `(0, 0.05]`. The source is node 0 and the
/// target node `n - 1`.
pub fn random_small_network(n_nodes: usize, density: f64, seed: u64) -> Network {
    assert!(n_nodes >= 2);
    let mut rng = rng_for(seed, 2);
    let mut builder = Network::builder(DEFAULT_P_MAX);
    let names: Vec<String> = (0..n_nodes).map(|v| format!("n{v}")).collect();
    builder = builder.nodes(names.iter().cloned());
    for u in 0..n_nodes {
        for v in 0..n_nodes {
            if u != v && rng.random_bool(density) {
                let w = rng.random_range(1..=10);
                // (0, 0.05]: reflect the half-open [0, 0.05) draw
                let p = DEFAULT_P_MAX - rng.random_range(0.0..DEFAULT_P_MAX);
                builder = builder.link(&names[u], &names[v], w, p);
            }
        }
    }
    builder
        .endpoints(&names[0], &names[n_nodes - 1])
        .build()
        .expect("random network is valid")
}
