//! Delay-versus-survivability sweeps over random topologies.
//!
//! For each instance the minimum CT delay `D(S)` is computed on a grid of
//! survivability levels. Only instances admitting a fully disjoint pair are
//! admissible; their delay ratio is `D(S) / D(1)`.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ExperimentError;
use crate::graph::{NodeId, Weight};
use crate::paths::edsp;
use crate::routing::{SolveMode, TransformedNetwork, Variant};
use crate::topology::{generate_network, TopologyConfig, TopologyModel};

pub const WORKERS_ENV: &str = "SURVROUTE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeConfig {
    Exact,
    Fptas { epsilon: f64 },
}

impl From<ModeConfig> for SolveMode {
    fn from(m: ModeConfig) -> Self {
        match m {
            ModeConfig::Exact => SolveMode::Exact,
            ModeConfig::Fptas { epsilon } => SolveMode::Fptas { epsilon },
        }
    }
}

fn default_grid() -> Vec<f64> {
    survivability_grid(0.9, 1.0, 0.005)
}

fn default_mode() -> ModeConfig {
    ModeConfig::Fptas { epsilon: 0.01 }
}

fn default_seed() -> u64 {
    1
}

/// Sweep configuration; the JSON form mirrors the fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub topology: TopologyModel,
    pub n_nodes: usize,
    pub omegas: Vec<f64>,
    #[serde(default = "default_grid")]
    pub grid: Vec<f64>,
    pub instances: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_mode")]
    pub mode: ModeConfig,
    /// Worker threads; 0 uses all cores. Overridden by `SURVROUTE_WORKERS`.
    #[serde(default)]
    pub workers: usize,
}

/// Levels `from, from + step, ..., to`, rounded to 12 decimals.
pub fn survivability_grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let count = ((to - from) / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12)
        .collect()
}

impl ExperimentConfig {
    pub fn from_json(bytes: &[u8]) -> Result<Self, ExperimentError> {
        let cfg: Self = serde_json::from_slice(bytes).map_err(|e| ExperimentError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: &str| Err(ExperimentError::Config(m.to_string()));
        if self.n_nodes < 2 {
            return bad("n_nodes must be at least 2");
        }
        if self.instances == 0 {
            return bad("instances must be at least 1");
        }
        if self.omegas.is_empty() || self.omegas.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return bad("omegas must be non-empty and within [0, 1]");
        }
        if self.grid.is_empty() || self.grid.iter().any(|&s| !(s > 0.0 && s <= 1.0)) {
            return bad("grid must be non-empty and within (0, 1]");
        }
        if let ModeConfig::Fptas { epsilon } = self.mode {
            if !(epsilon > 0.0 && epsilon.is_finite()) {
                return bad("epsilon must be positive");
            }
        }
        Ok(())
    }

    fn worker_count(&self) -> usize {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(self.workers)
    }
}

/// One row per (instance, survivability level).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub instance_id: usize,
    pub model: String,
    pub omega: f64,
    pub seed: u64,
    pub s_level: f64,
    pub delay: Option<Weight>,
    pub feasible: bool,
    pub admissible: bool,
    pub delay_ratio: Option<f64>,
}

/// Mean delay ratio per (model, omega, level) over admissible instances
/// feasible at that level.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatePoint {
    pub model: String,
    pub omega: f64,
    pub s_level: f64,
    pub mean_ratio: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub records: Vec<ExperimentRecord>,
    pub aggregate: Vec<AggregatePoint>,
    pub instance_count: usize,
    pub admissible_count: usize,
    /// Grid points whose connection had a repeated node on some path.
    pub non_simple_count: usize,
}

struct InstanceResult {
    records: Vec<ExperimentRecord>,
    admissible: bool,
    non_simple: usize,
}

fn run_instance(
    cfg: &ExperimentConfig,
    instance_id: usize,
    omega: f64,
    seed: u64,
) -> InstanceResult {
    let topo = TopologyConfig {
        model: cfg.topology,
        n_nodes: cfg.n_nodes,
        seed,
    };
    let net = generate_network(&topo, omega);
    let (s, t): (NodeId, NodeId) = net.endpoints().expect("generated networks carry endpoints");
    let admissible = s != t && edsp(&net, s, t).is_some();
    let mode = SolveMode::from(cfg.mode);
    let mut delays: Vec<Option<Weight>> = vec![None; cfg.grid.len()];
    let mut non_simple = 0;
    if admissible {
        let tn = TransformedNetwork::build(&net, s, t, Variant::Ct).expect("admissible instance is routable");
        for (slot, &level) in delays.iter_mut().zip(&cfg.grid) {
            if let Ok(Some(answer)) = tn.tscmq(&net, level, mode) {
                if !answer.simple_paths {
                    non_simple += 1;
                }
                *slot = Some(answer.ct_weight);
            }
        }
    }
    let full = cfg
        .grid
        .iter()
        .position(|&l| l == 1.0)
        .and_then(|i| delays[i])
        .or_else(|| {
            // grid without 1.0: D(1) still anchors the ratio
            let tn = TransformedNetwork::build(&net, s, t, Variant::Ct).ok()?;
            tn.tscmq(&net, 1.0, mode).ok().flatten().map(|a| a.ct_weight)
        })
        .filter(|_| admissible);
    let model = cfg.topology.name().to_string();
    let records = cfg
        .grid
        .iter()
        .zip(&delays)
        .map(|(&level, &delay)| ExperimentRecord {
            instance_id,
            model: model.clone(),
            omega,
            seed,
            s_level: level,
            delay,
            feasible: delay.is_some(),
            admissible,
            delay_ratio: match (delay, full) {
                (Some(d), Some(f)) if f > 0 => Some(d as f64 / f as f64),
                _ => None,
            },
        })
        .collect();
    InstanceResult {
        records,
        admissible,
        non_simple,
    }
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, ExperimentError> {
    cfg.validate()?;
    let tasks: Vec<(usize, f64, u64)> = cfg
        .omegas
        .iter()
        .flat_map(|&omega| (0..cfg.instances).map(move |i| (omega, i)))
        .enumerate()
        .map(|(id, (omega, i))| (id, omega, cfg.seed.wrapping_add(i as u64)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count())
        .build()
        .map_err(|e| ExperimentError::Config(e.to_string()))?;
    let results: Vec<InstanceResult> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(id, omega, seed)| run_instance(cfg, id, omega, seed))
            .collect()
    });
    let instance_count = results.len();
    let admissible_count = results.iter().filter(|r| r.admissible).count();
    let non_simple_count = results.iter().map(|r| r.non_simple).sum();
    let records: Vec<ExperimentRecord> = results.into_iter().flat_map(|r| r.records).collect();
    let aggregate = aggregate(&records);
    Ok(ExperimentOutput {
        records,
        aggregate,
        instance_count,
        admissible_count,
        non_simple_count,
    })
}

/// Mean ratio per (model, omega, level); infeasible points are dropped from
/// the instance's series.
pub fn aggregate(records: &[ExperimentRecord]) -> Vec<AggregatePoint> {
    let mut acc: BTreeMap<(String, u64, u64), (f64, usize)> = BTreeMap::new();
    for r in records {
        if let (true, Some(ratio)) = (r.admissible, r.delay_ratio) {
            let e = acc
                .entry((r.model.clone(), r.omega.to_bits(), r.s_level.to_bits()))
                .or_default();
            e.0 += ratio;
            e.1 += 1;
        }
    }
    acc.into_iter()
        .map(|((model, omega, level), (sum, n))| AggregatePoint {
            model,
            omega: f64::from_bits(omega),
            s_level: f64::from_bits(level),
            mean_ratio: sum / n as f64,
            samples: n,
        })
        .collect()
}

pub const CSV_HEADER: [&str; 9] = [
    "instance_id",
    "model",
    "omega",
    "seed",
    "s_level",
    "delay",
    "feasible",
    "admissible",
    "delay_ratio",
];

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<(), ExperimentError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_csv_file(records: &[ExperimentRecord], path: &std::path::Path) -> Result<(), ExperimentError> {
    write_csv(records, std::fs::File::create(path)?)
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>, ExperimentError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
