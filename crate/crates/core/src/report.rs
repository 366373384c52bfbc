//! JSON documents shared by the command-line tool and the browser demo.
//! Object keys come out sorted, so equal inputs give byte-identical text.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::critical::CriticalCandidateSet;
use crate::error::{OracleError, RoutingError};
use crate::graph::{LinkId, Network, NodeId, Weight};
use crate::oracle::{oracle_solve, OracleProblem, OracleResult};
use crate::routing::{csmmq_2approx, qamsc, tscmq, RoutingAnswer, SolveMode, Variant};
use crate::upgrade::{UpgradeDesign, UpgradeMode};

/// The routing problems reachable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    CoQamsc,
    CtQamsc,
    CoTscmq,
    CtTscmq,
    Csmmq,
}

impl Problem {
    pub const ALL: [Problem; 5] = [
        Problem::CoQamsc,
        Problem::CtQamsc,
        Problem::CoTscmq,
        Problem::CtTscmq,
        Problem::Csmmq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::CoQamsc => "co-qamsc",
            Problem::CtQamsc => "ct-qamsc",
            Problem::CoTscmq => "co-tscmq",
            Problem::CtTscmq => "ct-tscmq",
            Problem::Csmmq => "csmmq",
        }
    }

    /// QAMSC problems take a weight bound; the others a survivability bound.
    pub fn takes_weight_bound(self) -> bool {
        matches!(self, Problem::CoQamsc | Problem::CtQamsc)
    }

    pub fn variant(self) -> Variant {
        match self {
            Problem::CoQamsc | Problem::CoTscmq => Variant::Co,
            _ => Variant::Ct,
        }
    }

    /// Objective value of an answer: survivability for QAMSC, the heavier
    /// path for CSMMQ, the variant weight otherwise.
    pub fn objective(self, net: &Network, answer: &RoutingAnswer) -> f64 {
        match self {
            Problem::CoQamsc | Problem::CtQamsc => answer.survivability,
            Problem::Csmmq => answer.connection.max_path_weight(net) as f64,
            _ => answer.weight() as f64,
        }
    }

    pub fn solve(
        self,
        net: &Network,
        s: NodeId,
        t: NodeId,
        bound: f64,
        mode: SolveMode,
    ) -> Result<Option<RoutingAnswer>, RoutingError> {
        let variant = self.variant();
        if self.takes_weight_bound() {
            if !(bound >= 0.0) {
                return Ok(None);
            }
            return qamsc(net, s, t, bound.floor() as Weight, variant, mode);
        }
        match self {
            Problem::Csmmq => csmmq_2approx(net, s, t, bound, mode),
            _ => tscmq(net, s, t, bound, variant, mode),
        }
    }

    pub fn oracle_problem(self, bound: f64) -> OracleProblem {
        let variant = self.variant();
        match self {
            Problem::CoQamsc | Problem::CtQamsc => OracleProblem::Qamsc {
                variant,
                budget: if bound >= 0.0 { bound.floor() as Weight } else { 0 },
            },
            Problem::Csmmq => OracleProblem::Csmmq { survivability: bound },
            _ => OracleProblem::Tscmq {
                variant,
                survivability: bound,
            },
        }
    }

    pub fn oracle(self, net: &Network, s: NodeId, t: NodeId, bound: f64, cap: usize) -> Result<OracleResult, OracleError> {
        if !self.takes_weight_bound() && !(bound > 0.0 && bound <= 1.0) {
            return Err(RoutingError::InvalidSurvivability(bound).into());
        }
        oracle_solve(net, s, t, self.oracle_problem(bound), cap)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown problem {s:?}"))
    }
}

pub fn link_label(net: &Network, e: LinkId) -> String {
    let l = net.link(e);
    format!("{}->{}", net.node_name(l.from), net.node_name(l.to))
}

pub fn route_report(net: &Network, problem: Problem, bound: f64, answer: &RoutingAnswer) -> Value {
    let mut doc = answer.to_json(net);
    doc["problem"] = json!(problem.name());
    doc["bound"] = json!(bound);
    doc["objective"] = json!(problem.objective(net, answer));
    doc
}

pub fn critical_report(net: &Network, set: &CriticalCandidateSet) -> Value {
    json!({
        "links": set.links.iter().map(|&e| link_label(net, e)).collect::<Vec<_>>(),
        "base_shortest_weight": set.base_shortest_weight,
        "shortest_path": set.path.names(net),
    })
}

pub fn upgrade_report(net: &Network, mode: UpgradeMode, budget: f64, design: &UpgradeDesign) -> Value {
    let links: Vec<Value> = design
        .candidates
        .links
        .iter()
        .zip(&design.upgrade.upgrades)
        .map(|(&e, &u)| {
            json!({
                "link": link_label(net, e),
                "fail_prob": net.link(e).fail_prob,
                "upgrade": u,
            })
        })
        .collect();
    json!({
        "mode": match mode {
            UpgradeMode::Additive => "additive",
            UpgradeMode::Multiplicative => "multiplicative",
        },
        "budget": budget,
        "base_shortest_weight": design.candidates.base_shortest_weight,
        "links": links,
        "residual_budget": design.upgrade.residual_budget,
        "survivability_factor": design.survivability_factor,
    })
}

pub fn oracle_report(net: &Network, problem: Problem, bound: f64, result: &OracleResult) -> Value {
    let best = result.best().map(|c| {
        json!({
            "first": c.connection.first.names(net),
            "second": c.connection.second.names(net),
            "survivability": c.survivability,
            "co_weight": c.co_weight,
            "ct_weight": c.ct_weight,
            "max_path_weight": c.max_weight,
        })
    });
    json!({
        "problem": problem.name(),
        "bound": bound,
        "objective": result.value(),
        "best": best,
        "optimum_count": result.optima.len(),
        "path_count": result.path_count,
        "pair_count": result.pair_count,
    })
}
