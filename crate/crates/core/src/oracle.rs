//! Exhaustive reference solver for small networks: enumerates every simple
//! s-t path and evaluates every ordered pair of them.

use crate::error::OracleError;
use crate::graph::{Network, NodeId, Path, SurvivableConnection, Weight, SURVIVABILITY_TOLERANCE};
use crate::routing::Variant;

pub const DEFAULT_PATH_CAP: usize = 20_000;

/// Every simple s-t path, in depth-first order following link ids.
pub fn enumerate_simple_paths(net: &Network, s: NodeId, t: NodeId, cap: usize) -> Result<Vec<Path>, OracleError> {
    let mut out = Vec::new();
    let mut on_path = vec![false; net.node_count()];
    let mut links = Vec::new();
    dfs(net, s, t, cap, &mut on_path, &mut links, &mut out)?;
    Ok(out)
}

fn dfs(
    net: &Network,
    u: NodeId,
    t: NodeId,
    cap: usize,
    on_path: &mut [bool],
    links: &mut Vec<usize>,
    out: &mut Vec<Path>,
) -> Result<(), OracleError> {
    if u == t {
        if out.len() == cap {
            return Err(OracleError::Overflow { cap });
        }
        let start = links.first().map_or(t, |&e| net.link(e).from);
        out.push(Path::from_links(net, start, links).expect("dfs follows links"));
        return Ok(());
    }
    on_path[u] = true;
    for &e in net.out_links(u) {
        let v = net.link(e).to;
        if !on_path[v] {
            links.push(e);
            dfs(net, v, t, cap, on_path, links, out)?;
            links.pop();
        }
    }
    on_path[u] = false;
    Ok(())
}

/// Counts simple s-t paths by recursion over a node bitmask on an adjacency
/// matrix, independently of [`enumerate_simple_paths`].
pub fn count_simple_paths(net: &Network, s: NodeId, t: NodeId) -> u64 {
    let n = net.node_count();
    assert!(n <= 64, "bitmask count supports at most 64 nodes");
    let mut adj = vec![0u64; n];
    for l in net.links() {
        adj[l.from] |= 1 << l.to;
    }
    fn go(adj: &[u64], u: usize, t: usize, seen: u64) -> u64 {
        if u == t {
            return 1;
        }
        let mut total = 0;
        let mut next = adj[u] & !seen;
        while next != 0 {
            let v = next.trailing_zeros() as usize;
            next &= next - 1;
            total += go(adj, v, t, seen | (1 << v));
        }
        total
    }
    go(&adj, s, t, 1 << s)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleProblem {
    /// Maximum survivability with weight at most `budget`.
    Qamsc { variant: Variant, budget: Weight },
    /// Minimum weight with survivability at least `survivability`.
    Tscmq { variant: Variant, survivability: f64 },
    /// Minimum heavier-path weight with survivability at least `survivability`.
    Csmmq { survivability: f64 },
    /// Any connection with weight at most `budget` and survivability at
    /// least `survivability`.
    Rwsc { variant: Variant, budget: f64, survivability: f64 },
}

/// Metrics of one enumerated ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub connection: SurvivableConnection,
    pub survivability: f64,
    pub co_weight: Weight,
    pub ct_weight: Weight,
    pub max_weight: Weight,
}

impl Candidate {
    pub fn weight(&self, variant: Variant) -> Weight {
        match variant {
            Variant::Co => self.co_weight,
            Variant::Ct => self.ct_weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub problem: OracleProblem,
    /// All optimal pairs, in enumeration order; empty when infeasible.
    /// For `Rwsc` these are all feasible pairs.
    pub optima: Vec<Candidate>,
    pub path_count: usize,
    pub pair_count: usize,
}

impl OracleResult {
    pub fn best(&self) -> Option<&Candidate> {
        self.optima.first()
    }

    pub fn is_feasible(&self) -> bool {
        !self.optima.is_empty()
    }

    /// Optimal objective value: survivability for QAMSC, weight for the
    /// weight-minimizing problems, 1 or 0 for RWSC.
    pub fn value(&self) -> Option<f64> {
        let best = self.best()?;
        Some(match self.problem {
            OracleProblem::Qamsc { .. } => best.survivability,
            OracleProblem::Tscmq { variant, .. } => best.weight(variant) as f64,
            OracleProblem::Csmmq { .. } => best.max_weight as f64,
            OracleProblem::Rwsc { .. } => 1.0,
        })
    }
}

struct PathInfo {
    path: Path,
    mask: u128,
    weight: Weight,
}

/// Paths and link metrics precomputed once per (network, s, t), so many
/// problems can be solved without enumerating again.
pub struct PairSpace<'n> {
    net: &'n Network,
    paths: Vec<PathInfo>,
}

impl<'n> PairSpace<'n> {
    pub fn new(net: &'n Network, s: NodeId, t: NodeId, cap: usize) -> Result<Self, OracleError> {
        assert!(net.link_count() <= 128, "oracle supports at most 128 links");
        let paths = enumerate_simple_paths(net, s, t, cap)?
            .into_iter()
            .map(|path| {
                let mask = path.links().iter().fold(0u128, |m, &e| m | (1u128 << e));
                let weight = path.weight(net);
                PathInfo { path, mask, weight }
            })
            .collect();
        Ok(Self { net, paths })
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter().map(|p| &p.path)
    }

    fn evaluate(&self, i: usize, j: usize) -> (f64, Weight, Weight, Weight) {
        let (a, b) = (&self.paths[i], &self.paths[j]);
        let mut common = a.mask & b.mask;
        let mut surv = 1.0;
        let mut shared = 0;
        while common != 0 {
            let e = common.trailing_zeros() as usize;
            common &= common - 1;
            let link = self.net.link(e);
            surv *= 1.0 - link.fail_prob;
            shared += link.weight;
        }
        let ct = a.weight + b.weight;
        (surv, ct - shared, ct, a.weight.max(b.weight))
    }

    fn candidate(&self, i: usize, j: usize) -> Candidate {
        let (survivability, co_weight, ct_weight, max_weight) = self.evaluate(i, j);
        Candidate {
            connection: SurvivableConnection {
                first: self.paths[i].path.clone(),
                second: self.paths[j].path.clone(),
            },
            survivability,
            co_weight,
            ct_weight,
            max_weight,
        }
    }

    /// Every ordered pair, identical pairs included.
    pub fn all_pairs(&self) -> impl Iterator<Item = Candidate> + '_ {
        let n = self.paths.len();
        (0..n).flat_map(move |i| (0..n).map(move |j| self.candidate(i, j)))
    }

    pub fn solve(&self, problem: OracleProblem) -> OracleResult {
        let n = self.paths.len();
        let tol = SURVIVABILITY_TOLERANCE;
        // objective key, smaller is better; None = infeasible
        let key = |i: usize, j: usize| -> Option<(f64, f64)> {
            let (surv, co, ct, max) = self.evaluate(i, j);
            let w = |v: Variant| match v {
                Variant::Co => co,
                Variant::Ct => ct,
            };
            match problem {
                OracleProblem::Qamsc { variant, budget } => (w(variant) <= budget).then_some((-surv, 0.0)),
                OracleProblem::Tscmq { variant, survivability } => {
                    (surv >= survivability - tol).then_some((w(variant) as f64, 0.0))
                }
                OracleProblem::Csmmq { survivability } => {
                    let ordered = self.paths[i].weight <= self.paths[j].weight;
                    (ordered && surv >= survivability - tol).then_some((max as f64, 0.0))
                }
                OracleProblem::Rwsc {
                    variant,
                    budget,
                    survivability,
                } => (w(variant) as f64 <= budget && surv >= survivability - tol).then_some((0.0, 0.0)),
            }
        };
        let mut best: Option<(f64, f64)> = None;
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = key(i, j) {
                    if best.is_none_or(|b| k.0 < b.0) {
                        best = Some(k);
                    }
                }
            }
        }
        let mut optima = Vec::new();
        if let Some((b, _)) = best {
            // survivabilities compared with a relative slack of a few ulps
            let slack = match problem {
                OracleProblem::Qamsc { .. } => 1e-12,
                _ => 0.0,
            };
            for i in 0..n {
                for j in 0..n {
                    if key(i, j).is_some_and(|k| k.0 <= b + slack) {
                        optima.push(self.candidate(i, j));
                    }
                }
            }
        }
        OracleResult {
            problem,
            optima,
            path_count: n,
            pair_count: n * n,
        }
    }

    /// Intersection of the links of all minimum-weight paths.
    pub fn shortest_path_intersection(&self) -> Option<(Weight, Vec<usize>)> {
        let min = self.paths.iter().map(|p| p.weight).min()?;
        let mask = self
            .paths
            .iter()
            .filter(|p| p.weight == min)
            .fold(u128::MAX, |m, p| m & p.mask);
        let links = (0..128).filter(|&e| mask >> e & 1 == 1).collect();
        Some((min, links))
    }

    /// Minimum total weight over link-disjoint ordered pairs.
    pub fn min_disjoint_pair_weight(&self) -> Option<Weight> {
        let n = self.paths.len();
        let mut best: Option<Weight> = None;
        for i in 0..n {
            for j in 0..n {
                if self.paths[i].mask & self.paths[j].mask == 0 {
                    let w = self.paths[i].weight + self.paths[j].weight;
                    best = Some(best.map_or(w, |b| b.min(w)));
                }
            }
        }
        best
    }
}

pub fn oracle_solve(
    net: &Network,
    s: NodeId,
    t: NodeId,
    problem: OracleProblem,
    cap: usize,
) -> Result<OracleResult, OracleError> {
    Ok(PairSpace::new(net, s, t, cap)?.solve(problem))
}
