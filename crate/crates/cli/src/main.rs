use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use survroute::critical::iawspl;
use survroute::oracle::DEFAULT_PATH_CAP;
use survroute::report::{critical_report, oracle_report, route_report, upgrade_report, Problem};
use survroute::routing::SolveMode;
use survroute::sim::{run_experiment, write_csv, ExperimentConfig};
use survroute::topology::{generate_network, TopologyConfig, TopologyModel};
use survroute::upgrade::{design_pipeline, UpgradeMode};
use survroute::{Network, NodeId, RoutingError};

/// Survivable routing with a tunable survivability level.
///
/// Exit status: 0 on success, 1 when the problem is infeasible, 2 on
/// invalid input.
#[derive(Parser)]
#[command(name = "survroute", version)]
struct Cli {
    /// Seed for commands that draw random numbers (generate, experiment).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Suppress the summary printed on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a survivable connection.
    Route(RouteArgs),
    /// List the links shared by every weight-shortest path.
    CriticalLinks(NetArgs),
    /// Spread an upgrade budget over the critical candidate links.
    Upgrade(UpgradeArgs),
    /// Generate a random network file.
    Generate(GenerateArgs),
    /// Run a delay-ratio sweep and write CSV records.
    Experiment(ExperimentArgs),
    /// Solve a routing problem by exhaustive enumeration (small networks).
    Oracle(OracleArgs),
}

#[derive(Args)]
struct NetArgs {
    /// Network file (JSON).
    #[arg(long, value_name = "FILE")]
    net: PathBuf,
    /// Source node; defaults to the file's "source".
    #[arg(long)]
    source: Option<String>,
    /// Target node; defaults to the file's "target".
    #[arg(long)]
    target: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    CoQamsc,
    CtQamsc,
    CoTscmq,
    CtTscmq,
    Csmmq,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::CoQamsc => Problem::CoQamsc,
            ProblemArg::CtQamsc => Problem::CtQamsc,
            ProblemArg::CoTscmq => Problem::CoTscmq,
            ProblemArg::CtTscmq => Problem::CtTscmq,
            ProblemArg::Csmmq => Problem::Csmmq,
        }
    }
}

#[derive(Args)]
struct RouteArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Weight bound (co-qamsc, ct-qamsc).
    #[arg(long, conflicts_with = "surv")]
    bound: Option<f64>,
    /// Survivability bound in (0, 1] (co-tscmq, ct-tscmq, csmmq).
    #[arg(long)]
    surv: Option<f64>,
    /// Use the approximation scheme with this epsilon instead of the exact
    /// solver.
    #[arg(long)]
    epsilon: Option<f64>,
    #[command(flatten)]
    net: NetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Additive,
    Multiplicative,
}

#[derive(Args)]
struct UpgradeArgs {
    #[arg(long)]
    budget: f64,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[command(flatten)]
    net: NetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Powerlaw,
    Waxman,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    nodes: usize,
    /// Probability that a link is fast.
    #[arg(long, default_value_t = 0.6)]
    omega: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment configuration (JSON).
    #[arg(long, value_name = "FILE")]
    config: PathBuf,
    /// Worker threads; 0 uses every core. SURVROUTE_WORKERS takes precedence.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Weight bound for QAMSC problems, survivability bound otherwise.
    #[arg(long)]
    bound: f64,
    /// Give up beyond this many simple paths.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    cap: usize,
    #[command(flatten)]
    net: NetArgs,
}

enum Status {
    Done,
    Infeasible,
}

struct Output {
    quiet: bool,
    out: Option<PathBuf>,
}

impl Output {
    fn emit(&self, text: &str) -> anyhow::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                stdout.flush()?;
                Ok(())
            }
        }
    }

    fn emit_json(&self, doc: &Value) -> anyhow::Result<()> {
        let mut text = serde_json::to_string_pretty(doc)?;
        text.push('\n');
        self.emit(&text)
    }

    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn read_file(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn load(args: &NetArgs) -> anyhow::Result<(Network, NodeId, NodeId)> {
    let net = Network::parse(&read_file(&args.net)?).with_context(|| format!("in {}", args.net.display()))?;
    let lookup = |name: &str| net.node_id(name).with_context(|| format!("unknown node {name:?}"));
    let s = match &args.source {
        Some(name) => lookup(name)?,
        None => net.source().context("no --source given and the file declares none")?,
    };
    let t = match &args.target {
        Some(name) => lookup(name)?,
        None => net.target().context("no --target given and the file declares none")?,
    };
    if s == t {
        bail!(RoutingError::SameEndpoints);
    }
    Ok((net, s, t))
}

fn route(ctx: &Output, args: &RouteArgs) -> anyhow::Result<Status> {
    let problem = Problem::from(args.problem);
    let bound = if problem.takes_weight_bound() {
        args.bound.with_context(|| format!("{problem} needs --bound"))?
    } else {
        args.surv.with_context(|| format!("{problem} needs --surv"))?
    };
    if problem.takes_weight_bound() && !(bound >= 0.0) {
        bail!("--bound must be non-negative");
    }
    let mode = match args.epsilon {
        Some(epsilon) => SolveMode::Fptas { epsilon },
        None => SolveMode::Exact,
    };
    let (net, s, t) = load(&args.net)?;
    match problem.solve(&net, s, t, bound, mode)? {
        Some(answer) => {
            ctx.note(&format!(
                "{problem}: survivability {:.6}, CO weight {}, CT weight {}",
                answer.survivability, answer.co_weight, answer.ct_weight
            ));
            ctx.emit_json(&route_report(&net, problem, bound, &answer))?;
            Ok(Status::Done)
        }
        None => Ok(Status::Infeasible),
    }
}

fn critical_links(ctx: &Output, args: &NetArgs) -> anyhow::Result<Status> {
    let (net, s, t) = load(args)?;
    match iawspl(&net, s, t) {
        Ok(set) => {
            ctx.note(&format!("{} candidate links", set.links.len()));
            ctx.emit_json(&critical_report(&net, &set))?;
            Ok(Status::Done)
        }
        Err(RoutingError::Unreachable) => Ok(Status::Infeasible),
        Err(e) => Err(e.into()),
    }
}

fn upgrade(ctx: &Output, args: &UpgradeArgs) -> anyhow::Result<Status> {
    if !(args.budget >= 0.0 && args.budget.is_finite()) {
        bail!("--budget must be a finite non-negative number");
    }
    let (net, s, t) = load(&args.net)?;
    let mode = match args.mode {
        ModeArg::Additive => UpgradeMode::Additive,
        ModeArg::Multiplicative => UpgradeMode::Multiplicative,
    };
    match design_pipeline(&net, s, t, args.budget, mode) {
        Ok(design) => {
            ctx.note(&format!(
                "survivability factor over candidates: {:.9}",
                design.survivability_factor
            ));
            ctx.emit_json(&upgrade_report(&net, mode, args.budget, &design))?;
            Ok(Status::Done)
        }
        Err(RoutingError::Unreachable) => Ok(Status::Infeasible),
        Err(e) => Err(e.into()),
    }
}

fn generate(ctx: &Output, seed: u64, args: &GenerateArgs) -> anyhow::Result<Status> {
    if args.nodes < 2 {
        bail!("--nodes must be at least 2");
    }
    if !(0.0..=1.0).contains(&args.omega) {
        bail!("--omega must lie in [0, 1]");
    }
    let model = match args.model {
        ModelArg::Powerlaw => TopologyModel::power_law(),
        ModelArg::Waxman => TopologyModel::waxman(),
    };
    let cfg = TopologyConfig {
        model,
        n_nodes: args.nodes,
        seed,
    };
    let net = generate_network(&cfg, args.omega);
    ctx.note(&format!(
        "{} network: {} nodes, {} links",
        model.name(),
        net.node_count(),
        net.link_count()
    ));
    let mut text = net.to_json();
    text.push('\n');
    ctx.emit(&text)?;
    Ok(Status::Done)
}

fn experiment(ctx: &Output, seed: Option<u64>, args: &ExperimentArgs) -> anyhow::Result<Status> {
    let mut cfg = ExperimentConfig::from_json(&read_file(&args.config)?)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(workers) = args.workers {
        cfg.workers = workers;
    }
    let out = run_experiment(&cfg)?;
    let mut buf = Vec::new();
    write_csv(&out.records, &mut buf)?;
    ctx.emit(std::str::from_utf8(&buf)?)?;
    ctx.note(&format!(
        "{} of {} instances admissible; {} non-simple connections",
        out.admissible_count, out.instance_count, out.non_simple_count
    ));
    for p in &out.aggregate {
        ctx.note(&format!(
            "{} omega={} S={}: mean delay ratio {:.4} over {}",
            p.model, p.omega, p.s_level, p.mean_ratio, p.samples
        ));
    }
    Ok(Status::Done)
}

fn oracle(ctx: &Output, args: &OracleArgs) -> anyhow::Result<Status> {
    let problem = Problem::from(args.problem);
    let (net, s, t) = load(&args.net)?;
    let result = problem.oracle(&net, s, t, args.bound, args.cap)?;
    ctx.note(&format!(
        "{} simple paths, {} ordered pairs",
        result.path_count, result.pair_count
    ));
    if !result.is_feasible() {
        return Ok(Status::Infeasible);
    }
    ctx.emit_json(&oracle_report(&net, problem, args.bound, &result))?;
    Ok(Status::Done)
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    let ctx = Output {
        quiet: cli.quiet,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Route(args) => route(&ctx, args),
        Command::CriticalLinks(args) => critical_links(&ctx, args),
        Command::Upgrade(args) => upgrade(&ctx, args),
        Command::Generate(args) => generate(&ctx, cli.seed.unwrap_or(1), args),
        Command::Experiment(args) => experiment(&ctx, cli.seed, args),
        Command::Oracle(args) => oracle(&ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Done) => ExitCode::SUCCESS,
        Ok(Status::Infeasible) => {
            eprintln!("infeasible");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
