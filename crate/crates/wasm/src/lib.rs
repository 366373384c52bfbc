//! Browser bindings: generate a random network, then route over it, sweep
//! the delay/survivability curve, or spread an upgrade budget.
//!
//! Every method returns a JSON string; errors come back as plain messages.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use survroute::paths::edsp;
use survroute::report::{route_report, upgrade_report, Problem};
use survroute::routing::{SolveMode, TransformedNetwork, Variant};
use survroute::sim::survivability_grid;
use survroute::topology::{assign_attrs, generate, LinkAttrConfig, TopologyConfig, TopologyModel};
use survroute::upgrade::{design_pipeline, UpgradeMode};
use survroute::{Network, NodeId};

#[wasm_bindgen]
pub struct Demo {
    net: Network,
    s: NodeId,
    t: NodeId,
    positions: Vec<(f64, f64)>,
}

fn mode(epsilon: Option<f64>) -> SolveMode {
    match epsilon {
        Some(epsilon) => SolveMode::Fptas { epsilon },
        None => SolveMode::Exact,
    }
}

fn circle(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            (0.5 + 0.45 * a.cos(), 0.5 + 0.45 * a.sin())
        })
        .collect()
}

#[wasm_bindgen]
impl Demo {
    /// `model` is "powerlaw" or "waxman".
    #[wasm_bindgen(constructor)]
    pub fn new(model: &str, nodes: usize, omega: f64, seed: u32) -> Result<Demo, String> {
        let model = TopologyModel::from_name(model).ok_or_else(|| format!("unknown model {model:?}"))?;
        if !(2..=2000).contains(&nodes) {
            return Err("nodes must lie in 2..=2000".into());
        }
        if !(0.0..=1.0).contains(&omega) {
            return Err("omega must lie in [0, 1]".into());
        }
        let topo = generate(&TopologyConfig {
            model,
            n_nodes: nodes,
            seed: seed.into(),
        });
        let net = assign_attrs(&topo.to_network(), &LinkAttrConfig::new(omega, seed.into()));
        let positions = topo.positions.clone().unwrap_or_else(|| circle(nodes));
        Ok(Demo {
            s: topo.source,
            t: topo.target,
            net,
            positions,
        })
    }

    /// Whether the endpoints admit a link-disjoint pair, i.e. every
    /// survivability level up to 1 is reachable.
    pub fn admissible(&self) -> bool {
        self.s != self.t && edsp(&self.net, self.s, self.t).is_some()
    }

    /// Nodes with unit-square coordinates, links, and the endpoints.
    pub fn network(&self) -> String {
        let nodes: Vec<Value> = self
            .positions
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| json!({"name": self.net.node_name(i), "x": x, "y": y}))
            .collect();
        let links: Vec<Value> = self
            .net
            .links()
            .iter()
            .map(|l| json!({"from": l.from, "to": l.to, "weight": l.weight, "fail_prob": l.fail_prob}))
            .collect();
        json!({
            "nodes": nodes,
            "links": links,
            "source": self.s,
            "target": self.t,
            "admissible": self.admissible(),
        }).to_string()
    }

    /// Routes one problem; `{"infeasible": true}` when no connection exists.
    pub fn route(&self, problem: &str, bound: f64, epsilon: Option<f64>) -> Result<String, String> {
        let problem: Problem = problem.parse()?;
        let answer = problem
            .solve(&self.net, self.s, self.t, bound, mode(epsilon))
            .map_err(|e| e.to_string())?;
        let doc = match answer {
            Some(a) => {
                let mut doc = route_report(&self.net, problem, bound, &a);
                let ids = |p: &survroute::Path| p.nodes().to_vec();
                doc["first_ids"] = json!(ids(&a.connection.first));
                doc["second_ids"] = json!(ids(&a.connection.second));
                doc
            }
            None => json!({"infeasible": true}),
        };
        Ok(doc.to_string())
    }

    /// Minimum CT delay at each level `from, from + step, ..., to`, with the
    /// ratio to the delay of a fully disjoint pair.
    pub fn delay_curve(&self, from: f64, to: f64, step: f64, epsilon: Option<f64>) -> Result<String, String> {
        if !(from > 0.0 && from <= to && to <= 1.0 && step > 0.0) {
            return Err("need 0 < from <= to <= 1 and step > 0".into());
        }
        if (to - from) / step > 1000.0 {
            return Err("at most 1000 levels".into());
        }
        let tn = TransformedNetwork::build(&self.net, self.s, self.t, Variant::Ct).map_err(|e| e.to_string())?;
        let mode = mode(epsilon);
        let delay = |level: f64| -> Result<Option<u64>, String> {
            Ok(tn.tscmq(&self.net, level, mode).map_err(|e| e.to_string())?.map(|a| a.ct_weight))
        };
        let full = delay(1.0)?;
        let mut points = Vec::new();
        for level in survivability_grid(from, to, step) {
            let d = delay(level)?;
            let ratio = match (d, full) {
                (Some(d), Some(f)) if f > 0 => Some(d as f64 / f as f64),
                _ => None,
            };
            points.push(json!({"s": level, "delay": d, "ratio": ratio}));
        }
        Ok(json!({"disjoint_delay": full, "points": points}).to_string())
    }

    /// `mode` is "additive" or "multiplicative".
    pub fn upgrade(&self, budget: f64, mode: &str) -> Result<String, String> {
        let mode = match mode {
            "additive" => UpgradeMode::Additive,
            "multiplicative" => UpgradeMode::Multiplicative,
            _ => return Err(format!("unknown mode {mode:?}")),
        };
        if !(budget >= 0.0 && budget.is_finite()) {
            return Err("budget must be finite and non-negative".into());
        }
        let design = design_pipeline(&self.net, self.s, self.t, budget, mode).map_err(|e| e.to_string())?;
        let mut doc = upgrade_report(&self.net, mode, budget, &design);
        let ids: Vec<(usize, usize)> = design
            .candidates
            .links
            .iter()
            .map(|&e| (self.net.link(e).from, self.net.link(e).to))
            .collect();
        doc["link_ids"] = json!(ids);
        Ok(doc.to_string())
    }
}
