//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the console.
//! The process fails when any criterion outside `EXPECTED_FAILURES` fails,
//! or when an expected failure unexpectedly passes (so the list stays honest).

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use survroute::critical::iawspl;
use survroute::oracle::{OracleProblem, PairSpace};
use survroute::paths::shortest_distance;
use survroute::report::{critical_report, oracle_report, route_report, upgrade_report, Problem};
use survroute::routing::{csmmq_2approx, qamsc, rwsc, tscmq, RoutingAnswer, SolveMode, TransformedNetwork, Variant};
use survroute::sim::{run_experiment, survivability_grid, write_csv, ExperimentConfig, ModeConfig};
use survroute::topology::{gen_power_law, partition_instance, TopologyModel};
use survroute::upgrade::{
    additive_upgrade, design_pipeline, multiplicative_upgrade, objective, upgrade_cap, UpgradeMode, UpgradeVector,
};
use survroute::{fixtures, Network};

/// Criteria known not to hold for this implementation; see the README's
/// notes on the simulation study.
const EXPECTED_FAILURES: &[u32] = &[7];

const CORPUS_SIZE: usize = 300;
const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

struct Instance<'n> {
    net: &'n Network,
    s: usize,
    t: usize,
    space: PairSpace<'n>,
}

fn instances(corpus: &[Network]) -> Vec<Instance<'_>> {
    corpus
        .iter()
        .map(|net| {
            let (s, t) = net.endpoints().unwrap();
            Instance {
                net,
                s,
                t,
                space: PairSpace::new(net, s, t, survroute::oracle::DEFAULT_PATH_CAP).unwrap(),
            }
        })
        .collect()
}

/// Compares a solver answer with the oracle value; `None` when the case is
/// excluded because the reconstruction repeated a node.
fn agree(oracle: Option<f64>, answer: &Option<RoutingAnswer>, value: impl Fn(&RoutingAnswer) -> f64) -> Option<bool> {
    match (oracle, answer) {
        (None, None) => Some(true),
        (Some(v), Some(a)) => {
            if !a.simple_paths {
                return None;
            }
            Some((v - value(a)).abs() <= TOL)
        }
        _ => Some(false),
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    excluded: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, verdict: Option<bool>, what: impl FnOnce() -> String) {
        self.cases += 1;
        match verdict {
            None => self.excluded += 1,
            Some(true) => {}
            Some(false) => self.failures.push(what()),
        }
    }

    fn outcome(&self, extra: &str) -> Outcome {
        let mut detail = format!(
            "{} cases, {} excluded (non-simple), {} violations{extra}",
            self.cases,
            self.excluded,
            self.failures.len()
        );
        if let Some(first) = self.failures.first() {
            detail.push_str(&format!("; first: {first}"));
        }
        Outcome::new(self.failures.is_empty() && self.cases > 0, detail)
    }
}

fn oracle_equivalence(corpus: &[Instance]) -> Outcome {
    let start = Instant::now();
    let mut tally = Tally::default();
    for (idx, inst) in corpus.iter().enumerate() {
        for variant in [Variant::Co, Variant::Ct] {
            for budget in common::budgets(inst.net, variant) {
                let o = inst.space.solve(OracleProblem::Qamsc { variant, budget });
                let a = qamsc(inst.net, inst.s, inst.t, budget, variant, SolveMode::Exact).unwrap();
                tally.record(agree(o.value(), &a, |a| a.survivability), || {
                    format!("net {idx} {variant:?}-QAMSC B={budget}")
                });
            }
            for surv in common::SURVIVABILITY_LEVELS {
                let o = inst.space.solve(OracleProblem::Tscmq {
                    variant,
                    survivability: surv,
                });
                let a = tscmq(inst.net, inst.s, inst.t, surv, variant, SolveMode::Exact).unwrap();
                tally.record(agree(o.value(), &a, |a| a.weight() as f64), || {
                    format!("net {idx} {variant:?}-TSCMQ S={surv}")
                });
            }
        }
    }
    let elapsed = start.elapsed();
    let mut out = tally.outcome(&format!(", {:.1}s", elapsed.as_secs_f64()));
    out.pass &= elapsed <= Duration::from_secs(300);
    out
}

fn critical_links_on_shortest_paths(corpus: &[Instance]) -> Outcome {
    let mut cases = 0;
    let mut violations = Vec::new();
    for (idx, inst) in corpus.iter().enumerate() {
        let candidates = iawspl(inst.net, inst.s, inst.t).unwrap();
        let allowed: BTreeSet<usize> = candidates.links.iter().copied().collect();
        let (_, intersection) = inst.space.shortest_path_intersection().unwrap();
        cases += 1;
        if intersection.iter().copied().collect::<BTreeSet<_>>() != allowed {
            violations.push(format!("net {idx}: candidate set differs from shortest-path intersection"));
        }
        let restricted = TransformedNetwork::build(inst.net, inst.s, inst.t, Variant::Ct).unwrap();
        let unrestricted = TransformedNetwork::build_unrestricted_ct(inst.net, inst.s, inst.t).unwrap();
        for budget in common::budgets(inst.net, Variant::Ct) {
            cases += 1;
            let a = restricted.qamsc(inst.net, budget, SolveMode::Exact).unwrap();
            let u = unrestricted.qamsc(inst.net, budget, SolveMode::Exact).unwrap();
            let o = inst.space.solve(OracleProblem::Qamsc {
                variant: Variant::Ct,
                budget,
            });
            if let Some(a) = &a {
                if !a.connection.critical_links().is_subset(&allowed) {
                    violations.push(format!("net {idx} B={budget}: critical link outside candidate set"));
                }
            }
            let values = [a.map(|a| a.survivability), u.map(|u| u.survivability), o.value()];
            let consistent = match values {
                [None, None, None] => true,
                [Some(x), Some(y), Some(z)] => (x - y).abs() <= TOL && (y - z).abs() <= TOL,
                _ => false,
            };
            if !consistent {
                violations.push(format!("net {idx} B={budget}: restricted/unrestricted/oracle {values:?}"));
            }
        }
        for surv in common::SURVIVABILITY_LEVELS {
            cases += 1;
            let o = inst.space.solve(OracleProblem::Tscmq {
                variant: Variant::Ct,
                survivability: surv,
            });
            if o.is_feasible() && !o.optima.iter().any(|c| c.connection.critical_links().is_subset(&allowed)) {
                violations.push(format!("net {idx} S={surv}: no optimum inside candidate set"));
            }
            let a = restricted.tscmq(inst.net, surv, SolveMode::Exact).unwrap();
            if a.is_some_and(|a| !a.connection.critical_links().is_subset(&allowed)) {
                violations.push(format!("net {idx} S={surv}: returned critical link outside candidate set"));
            }
        }
    }
    let mut detail = format!("{cases} checks, {} violations", violations.len());
    if let Some(first) = violations.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

fn fptas_bounds(corpus: &[Instance]) -> Outcome {
    let mut cases = 0;
    let mut violations = Vec::new();
    let mut worst = [0.0f64; 3];
    for (k, epsilon) in [0.01, 0.1, 0.5].into_iter().enumerate() {
        let mode = SolveMode::Fptas { epsilon };
        for (idx, inst) in corpus.iter().enumerate() {
            for variant in [Variant::Co, Variant::Ct] {
                let tn = TransformedNetwork::build(inst.net, inst.s, inst.t, variant).unwrap();
                for budget in common::budgets(inst.net, variant) {
                    cases += 1;
                    let exact = tn.qamsc(inst.net, budget, SolveMode::Exact).unwrap();
                    let approx = tn.qamsc(inst.net, budget, mode).unwrap();
                    match (exact, approx) {
                        (None, None) => {}
                        (Some(e), Some(a)) => {
                            let ratio = e.survivability / a.survivability;
                            worst[k] = worst[k].max(ratio - 1.0);
                            if ratio > 1.0 + epsilon + TOL || a.weight() > budget {
                                violations.push(format!("eps {epsilon} net {idx} {variant:?}-QAMSC B={budget}"));
                            }
                        }
                        _ => violations.push(format!("eps {epsilon} net {idx} {variant:?}-QAMSC feasibility")),
                    }
                }
                for surv in common::SURVIVABILITY_LEVELS {
                    cases += 1;
                    let exact = tn.tscmq(inst.net, surv, SolveMode::Exact).unwrap();
                    let approx = tn.tscmq(inst.net, surv, mode).unwrap();
                    match (exact, approx) {
                        (None, None) => {}
                        (Some(e), Some(a)) => {
                            let ratio = a.weight() as f64 / e.weight() as f64;
                            worst[k] = worst[k].max(ratio - 1.0);
                            if ratio > 1.0 + epsilon + TOL || a.survivability < surv - TOL {
                                violations.push(format!("eps {epsilon} net {idx} {variant:?}-TSCMQ S={surv}"));
                            }
                        }
                        _ => violations.push(format!("eps {epsilon} net {idx} {variant:?}-TSCMQ feasibility")),
                    }
                }
            }
        }
    }
    let mut detail = format!(
        "{cases} checks, {} violations, worst excess {:.4}/{:.4}/{:.4}",
        violations.len(),
        worst[0],
        worst[1],
        worst[2]
    );
    if let Some(first) = violations.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

/// Non-increasing lists of positive integers with at most `max_len`
/// elements and sum at most `max_sum`.
fn size_lists(max_sum: u64, max_len: usize) -> Vec<Vec<u64>> {
    fn go(rem: u64, cap: u64, max_len: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for v in 1..=rem.min(cap) {
            cur.push(v);
            go(rem - v, v, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_sum, max_sum, max_len, &mut Vec::new(), &mut out);
    out
}

fn partitionable(sizes: &[u64]) -> bool {
    let total: u64 = sizes.iter().sum();
    total % 2 == 0
        && (0u32..1 << sizes.len()).any(|mask| {
            sizes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .sum::<u64>()
                * 2
                == total
        })
}

fn reduction_fidelity() -> Outcome {
    let lists = size_lists(24, 8);
    let mut disagreements = Vec::new();
    let mut yes = 0;
    for sizes in &lists {
        let inst = partition_instance(sizes);
        let (s, t) = inst.network.endpoints().unwrap();
        let decided = rwsc(&inst.network, s, t, inst.budget, inst.survivability, Variant::Ct)
            .unwrap()
            .is_some();
        let truth = partitionable(sizes);
        yes += truth as usize;
        if decided != truth {
            disagreements.push(format!("{sizes:?}: solver {decided}, partition {truth}"));
        }
    }
    let mut detail = format!(
        "{} size lists ({yes} partitionable), {} disagreements",
        lists.len(),
        disagreements.len()
    );
    if let Some(first) = disagreements.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(disagreements.is_empty(), detail)
}

/// Best objective over the budget-exhausting allocations of 2 or 3 links:
/// dense grid, then golden-section refinement of the concave log-objective.
fn grid_oracle(mode: UpgradeMode, probs: &[f64], budget: f64) -> f64 {
    let caps: Vec<f64> = probs.iter().map(|&p| upgrade_cap(mode, p)).collect();
    if caps.iter().sum::<f64>() <= budget {
        return objective(mode, probs, &caps);
    }
    let score = |u: &[f64]| objective(mode, probs, u).ln();
    // best value with links [i..] sharing `left`, all budget spent
    fn inner(i: usize, left: f64, caps: &[f64], u: &mut Vec<f64>, score: &dyn Fn(&[f64]) -> f64) -> f64 {
        if i == caps.len() - 1 {
            u[i] = left.min(caps[i]);
            return score(u);
        }
        let rest: f64 = caps[i + 1..].iter().sum();
        let lo = (left - rest).max(0.0);
        let hi = left.min(caps[i]);
        let eval = |x: f64, u: &mut Vec<f64>| {
            u[i] = x;
            inner(i + 1, left - x, caps, u, score)
        };
        let steps = if caps.len() - i == 2 { 4000 } else { 200 };
        let mut best = (f64::NEG_INFINITY, lo);
        for k in 0..=steps {
            let x = lo + (hi - lo) * k as f64 / steps as f64;
            let v = eval(x, u);
            if v > best.0 {
                best = (v, x);
            }
        }
        let width = (hi - lo) / steps as f64;
        let (mut a, mut b) = ((best.1 - width).max(lo), (best.1 + width).min(hi));
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let (c, d) = (b - g * (b - a), a + g * (b - a));
            if eval(c, u) >= eval(d, u) {
                b = d;
            } else {
                a = c;
            }
        }
        eval(0.5 * (a + b), u).max(best.0)
    }
    let mut u = vec![0.0; probs.len()];
    inner(0, budget, &caps, &mut u, &score).exp()
}

fn random_allocation(rng: &mut ChaCha8Rng, caps: &[f64], budget: f64) -> Vec<f64> {
    let weights: Vec<f64> = caps.iter().map(|_| rng.random::<f64>()).collect();
    let total: f64 = weights.iter().sum();
    let spend = budget * rng.random::<f64>().sqrt();
    weights
        .iter()
        .zip(caps)
        .map(|(w, &c)| (spend * w / total).min(c))
        .collect()
}

fn upgrade_residuals(mode: UpgradeMode, probs: &[f64], budget: f64, v: &UpgradeVector) -> f64 {
    let caps: Vec<f64> = probs.iter().map(|&p| upgrade_cap(mode, p)).collect();
    let spent: f64 = v.upgrades.iter().sum();
    let mut residual = (spent + v.residual_budget - budget).abs();
    residual = residual.max((spent - budget.min(caps.iter().sum())).abs());
    for (u, c) in v.upgrades.iter().zip(&caps) {
        residual = residual.max((-u).max(u - c).max(0.0));
    }
    // stationarity: interior links share one success level, untouched links
    // sit at or above it
    let level: Vec<f64> = probs
        .iter()
        .zip(&v.upgrades)
        .map(|(&p, &u)| match mode {
            UpgradeMode::Additive => 1.0 - p + u,
            UpgradeMode::Multiplicative => 1.0 + u,
        })
        .collect();
    let interior: Vec<usize> = (0..probs.len())
        .filter(|&i| v.upgrades[i] > 1e-12 && v.upgrades[i] < caps[i] - 1e-12)
        .collect();
    if let Some(&first) = interior.first() {
        for &i in &interior {
            residual = residual.max((level[i] - level[first]).abs());
        }
        for i in 0..probs.len() {
            if v.upgrades[i] <= 1e-12 {
                residual = residual.max((level[first] - level[i]).max(0.0));
            }
        }
    }
    residual
}

fn water_filling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut beaten = 0;
    let mut grid_gap: f64 = 0.0;
    let mut residual: f64 = 0.0;
    let mut grid_cases = 0;
    let mut instances = 0;
    for round in 0..100 {
        let k = 1 + round % 8;
        let probs: Vec<f64> = (0..k).map(|_| rng.random_range(0.001..0.6)).collect();
        for mode in [UpgradeMode::Additive, UpgradeMode::Multiplicative] {
            instances += 1;
            let caps: Vec<f64> = probs.iter().map(|&p| upgrade_cap(mode, p)).collect();
            let budget = rng.random_range(0.0..1.2) * caps.iter().sum::<f64>();
            let v = match mode {
                UpgradeMode::Additive => additive_upgrade(&probs, budget),
                UpgradeMode::Multiplicative => multiplicative_upgrade(&probs, budget),
            };
            residual = residual.max(upgrade_residuals(mode, &probs, budget, &v));
            let best = objective(mode, &probs, &v.upgrades);
            for _ in 0..10_000 {
                let u = random_allocation(&mut rng, &caps, budget);
                if objective(mode, &probs, &u) > best + 1e-12 {
                    beaten += 1;
                }
            }
            if k == 2 || k == 3 {
                grid_cases += 1;
                grid_gap = grid_gap.max((grid_oracle(mode, &probs, budget) - best).abs());
            }
        }
    }
    for (probs, budget) in [(vec![0.2, 0.1], 0.1), (vec![0.5, 0.2], 0.4), (vec![0.5, 0.2], 0.6)] {
        for mode in [UpgradeMode::Additive, UpgradeMode::Multiplicative] {
            grid_cases += 1;
            let v = survroute::upgrade::upgrade(mode, &probs, budget);
            let best = objective(mode, &probs, &v.upgrades);
            grid_gap = grid_gap.max((grid_oracle(mode, &probs, budget) - best).abs());
        }
    }
    Outcome::new(
        beaten == 0 && grid_gap <= 1e-6 && residual <= 1e-9,
        format!(
            "{instances} instances x 10000 random allocations, {beaten} beat the solver; \
             grid gap {grid_gap:.2e} over {grid_cases} small instances; max residual {residual:.2e}"
        ),
    )
}

fn two_approximation(corpus: &[Instance]) -> Outcome {
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    let mut violations = Vec::new();
    for (idx, inst) in corpus.iter().enumerate() {
        for surv in [0.95, 0.99, 1.0] {
            cases += 1;
            let o = inst.space.solve(OracleProblem::Csmmq { survivability: surv });
            let a = csmmq_2approx(inst.net, inst.s, inst.t, surv, SolveMode::Exact).unwrap();
            match (o.value(), a) {
                (None, None) => {}
                (Some(opt), Some(a)) => {
                    let got = a.connection.max_path_weight(inst.net) as f64;
                    worst = worst.max(got / opt);
                    let ordered = a.connection.first.weight(inst.net) <= a.connection.second.weight(inst.net);
                    if got > 2.0 * opt || !ordered || a.survivability < surv - TOL {
                        violations.push(format!("net {idx} S={surv}: {got} vs optimum {opt}"));
                    }
                }
                _ => violations.push(format!("net {idx} S={surv}: feasibility differs")),
            }
        }
    }
    let mut detail = format!("{cases} checks, worst ratio {worst:.3}, {} violations", violations.len());
    if let Some(first) = violations.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    Outcome::new(violations.is_empty(), detail)
}

fn simulation_trend() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (model, threshold) in [(TopologyModel::power_law(), 0.75), (TopologyModel::waxman(), 0.80)] {
        let start = Instant::now();
        let cfg = ExperimentConfig {
            topology: model,
            n_nodes: 100,
            omegas: vec![0.6],
            grid: survivability_grid(0.9, 1.0, 0.005),
            instances: 300,
            seed: 1,
            mode: ModeConfig::Fptas { epsilon: 0.01 },
            workers: 0,
        };
        let out = run_experiment(&cfg).unwrap();
        let curve: Vec<(f64, f64)> = out.aggregate.iter().map(|p| (p.s_level, p.mean_ratio)).collect();
        let at = |level: f64| curve.iter().find(|(l, _)| (*l - level).abs() < 1e-9).map(|c| c.1);
        let r95 = at(0.95).unwrap_or(f64::NAN);
        let r100 = at(1.0).unwrap_or(f64::NAN);
        let monotone = curve.windows(2).all(|w| w[0].1 <= w[1].1 + 0.011);
        let elapsed = start.elapsed();
        let ok = r95 <= threshold && r100 == 1.0 && monotone && elapsed <= Duration::from_secs(900);
        pass &= ok;
        parts.push(format!(
            "{} {}: mean ratio {r95:.4} at 0.95 (need <= {threshold}), {r100} at 1.0, monotone {monotone}, \
             {}/{} admissible, {:.1}s",
            model.name(),
            if ok { "ok" } else { "MISSED" },
            out.admissible_count,
            out.instance_count,
            elapsed.as_secs_f64()
        ));
    }
    Outcome::new(pass, parts.join("; "))
}

fn determinism() -> Outcome {
    fn outputs() -> Vec<String> {
        let pretty = |v: &serde_json::Value| serde_json::to_string_pretty(v).unwrap();
        let mut out = Vec::new();
        let net = fixtures::example_network();
        let (s, t) = net.endpoints().unwrap();
        for problem in Problem::ALL {
            let bound = if problem.takes_weight_bound() { 8.0 } else { 0.99 };
            if let Some(a) = problem.solve(&net, s, t, bound, SolveMode::Exact).unwrap() {
                out.push(pretty(&route_report(&net, problem, bound, &a)));
            }
            let r = problem.oracle(&net, s, t, bound, 20_000).unwrap();
            out.push(pretty(&oracle_report(&net, problem, bound, &r)));
        }
        out.push(pretty(&critical_report(&net, &iawspl(&net, s, t).unwrap())));
        for mode in [UpgradeMode::Additive, UpgradeMode::Multiplicative] {
            let d = design_pipeline(&net, s, t, 0.03, mode).unwrap();
            out.push(pretty(&upgrade_report(&net, mode, 0.03, &d)));
        }
        out.push(gen_power_law(60, 9).to_json());
        out
    }
    fn sweep(workers: usize) -> Vec<u8> {
        let cfg = ExperimentConfig {
            topology: TopologyModel::waxman(),
            n_nodes: 40,
            omegas: vec![0.4, 0.8],
            grid: survivability_grid(0.9, 1.0, 0.02),
            instances: 6,
            seed: 3,
            mode: ModeConfig::Fptas { epsilon: 0.1 },
            workers,
        };
        let mut buf = Vec::new();
        write_csv(&run_experiment(&cfg).unwrap().records, &mut buf).unwrap();
        buf
    }
    let same_docs = outputs() == outputs();
    let same_csv = sweep(1) == sweep(4);
    Outcome::new(
        same_docs && same_csv,
        format!("reports identical across runs: {same_docs}; sweep CSV identical for 1 and 4 workers: {same_csv}"),
    )
}

fn main() {
    let start = Instant::now();
    let corpus = common::corpus(CORPUS_SIZE);
    let prepared = instances(&corpus);
    let paths: usize = prepared.iter().map(|i| i.space.path_count()).sum();
    let reachable = prepared
        .iter()
        .filter(|i| shortest_distance(i.net, i.s, i.t, |_| true).is_some())
        .count();
    println!(
        "corpus: {} networks with 5-9 nodes, {reachable} routable, {paths} simple s-t paths in total",
        prepared.len()
    );

    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let checks: Vec<(u32, &str, Check)> = vec![
        (1, "exact solvers match the exhaustive oracle", Box::new(|| oracle_equivalence(&prepared))),
        (2, "critical links lie on every shortest path", Box::new(|| critical_links_on_shortest_paths(&prepared))),
        (3, "approximation ratios stay within 1 + epsilon", Box::new(|| fptas_bounds(&prepared))),
        (4, "partition reduction decides partition", Box::new(reduction_fidelity)),
        (5, "upgrade allocations are optimal", Box::new(water_filling)),
        (6, "min-sum routing is a 2-approximation of min-max", Box::new(|| two_approximation(&prepared))),
        (7, "delay ratio trend at desk scale", Box::new(simulation_trend)),
        (8, "outputs are deterministic", Box::new(determinism)),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in &checks {
        let t0 = Instant::now();
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        let note = match (outcome.pass, EXPECTED_FAILURES.contains(id)) {
            (false, true) => " [expected failure]",
            (true, true) => " [expected failure now passes; update EXPECTED_FAILURES]",
            _ => "",
        };
        println!(
            "criterion {id} {verdict}: {name} ({}; {:.1}s){note}",
            outcome.detail,
            t0.elapsed().as_secs_f64()
        );
        if outcome.pass == EXPECTED_FAILURES.contains(id) {
            unexpected.push(*id);
        }
    }
    println!("acceptance finished in {:.1}s", start.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        println!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
