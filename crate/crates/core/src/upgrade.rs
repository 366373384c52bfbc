//! Spending an upgrade budget on candidate links to raise survivability.
//!
//! Additive upgrades lower a link's failure probability: `p_e - u_e`.
//! Multiplicative upgrades scale its success probability: `(1 + u_e)(1 - p_e)`.
//! Both objectives are products of per-link success levels, so the optimum
//! equalizes levels across the links that are neither untouched nor capped.

use serde::Serialize;

use crate::critical::{iawspl, CriticalCandidateSet};
use crate::error::RoutingError;
use crate::graph::{Network, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpgradeMode {
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpgradeVector {
    pub upgrades: Vec<f64>,
    pub residual_budget: f64,
}

/// Per-link cap on the upgrade.
pub fn upgrade_cap(mode: UpgradeMode, p: f64) -> f64 {
    match mode {
        UpgradeMode::Additive => p,
        UpgradeMode::Multiplicative => p / (1.0 - p),
    }
}

/// Success probability of a link after upgrading it by `u`.
pub fn upgraded_success(mode: UpgradeMode, p: f64, u: f64) -> f64 {
    match mode {
        UpgradeMode::Additive => 1.0 - p + u,
        UpgradeMode::Multiplicative => ((1.0 + u) * (1.0 - p)).min(1.0),
    }
}

/// Product of upgraded success probabilities.
pub fn objective(mode: UpgradeMode, probs: &[f64], upgrades: &[f64]) -> f64 {
    probs
        .iter()
        .zip(upgrades)
        .map(|(&p, &u)| upgraded_success(mode, p, u))
        .product()
}

fn check_inputs(probs: &[f64], budget: f64) {
    assert!(budget >= 0.0 && budget.is_finite(), "budget must be finite and >= 0");
    assert!(
        probs.iter().all(|&p| p > 0.0 && p < 1.0),
        "failure probabilities must lie in (0, 1)"
    );
}

/// Water-filling: raise the worst links to a common success level `L`,
/// `u_e = clamp(L - (1 - p_e), 0, p_e)`, with `L` found by bisection so the
/// budget is spent exactly.
pub fn additive_upgrade(probs: &[f64], budget: f64) -> UpgradeVector {
    check_inputs(probs, budget);
    let full: f64 = probs.iter().sum();
    if budget >= full {
        return UpgradeVector {
            upgrades: probs.to_vec(),
            residual_budget: budget - full,
        };
    }
    let fill = |level: f64| -> Vec<f64> {
        probs
            .iter()
            .map(|&p| (level - (1.0 - p)).clamp(0.0, p))
            .collect()
    };
    let mut lo = probs.iter().map(|&p| 1.0 - p).fold(1.0, f64::min);
    let mut hi = 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if fill(mid).iter().sum::<f64>() > budget {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let upgrades = fill(lo);
    let spent: f64 = upgrades.iter().sum();
    UpgradeVector {
        upgrades,
        residual_budget: budget - spent,
    }
}

/// Splits the budget equally when every share fits under its cap
/// `p_e / (1 - p_e)`; otherwise saturates the smallest-cap link (lowest
/// index on ties) and repeats on the rest.
pub fn multiplicative_upgrade(probs: &[f64], budget: f64) -> UpgradeVector {
    check_inputs(probs, budget);
    let mut upgrades = vec![0.0; probs.len()];
    let mut remaining: Vec<usize> = (0..probs.len()).collect();
    let mut left = budget;
    while !remaining.is_empty() {
        let share = left / remaining.len() as f64;
        let (pos, &smallest) = remaining
            .iter()
            .enumerate()
            .min_by(|a, b| probs[*a.1].total_cmp(&probs[*b.1]).then(a.1.cmp(b.1)))
            .expect("non-empty");
        let cap = upgrade_cap(UpgradeMode::Multiplicative, probs[smallest]);
        if share <= cap {
            for &i in &remaining {
                upgrades[i] = share;
            }
            left = 0.0;
            break;
        }
        upgrades[smallest] = cap;
        left -= cap;
        remaining.remove(pos);
    }
    UpgradeVector {
        upgrades,
        residual_budget: left,
    }
}

pub fn upgrade(mode: UpgradeMode, probs: &[f64], budget: f64) -> UpgradeVector {
    match mode {
        UpgradeMode::Additive => additive_upgrade(probs, budget),
        UpgradeMode::Multiplicative => multiplicative_upgrade(probs, budget),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpgradeDesign {
    pub candidates: CriticalCandidateSet,
    pub upgrade: UpgradeVector,
    /// Product over the candidates of the upgraded success probabilities.
    pub survivability_factor: f64,
}

/// Finds the candidate links and spends `budget` on them.
pub fn design_pipeline(
    net: &Network,
    s: NodeId,
    t: NodeId,
    budget: f64,
    mode: UpgradeMode,
) -> Result<UpgradeDesign, RoutingError> {
    let candidates = iawspl(net, s, t)?;
    let probs: Vec<f64> = candidates.links.iter().map(|&e| net.link(e).fail_prob).collect();
    let upgrade = upgrade(mode, &probs, budget);
    let survivability_factor = objective(mode, &probs, &upgrade.upgrades);
    Ok(UpgradeDesign {
        candidates,
        upgrade,
        survivability_factor,
    })
}
