//! The `sspflow` command line.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{check_lemmas, check_reconstruct, classify, gap_report};
use crate::experiment::{ExperimentPlan, Model};
use crate::generators::{perturbed_integer, random_topology, sample_costs, Convention, Shape, SmoothedCostSpec};
use crate::lowerbound::{build_for_phi, build_stage, verify_count, verify_stage, LowerBoundError, LowerBoundParams};
use crate::network::{into_single_commodity, read_instance, write_instance, TransformedNetwork};
use crate::solver::{cost_function, max_flow_value, solve, CostFunction, Outcome, SolveError, SspOptions};

#[derive(Debug, Parser)]
#[command(name = "sspflow", version, about = "Successive shortest path min-cost flow laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run SSP on an instance file and write the augmentation trace as CSV.
    Solve(SolveArgs),
    /// Write a random or lower-bound instance in DIMACS format.
    Generate(GenerateArgs),
    /// Check the exact augmentation count of the lower-bound family.
    Lowerbound(LowerboundArgs),
    /// Run a parameter sweep and write per-trial and per-cell CSV.
    Experiment(ExperimentArgs),
    /// Write the cost function of an instance as CSV.
    Costfn(CostfnArgs),
    /// Check the structural invariants of the SSP run on an instance.
    Verify(VerifyArgs),
    /// Harvest flows from an SSP run and recover each with Reconstruct.
    ReconstructCheck(InstanceArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Instance in extended DIMACS format.
    pub instance: PathBuf,
    /// Flow value to reach; defaults to the maximum flow value.
    #[arg(long)]
    pub z: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Write the trace here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Keep all intermediate flows (needed by --verify on long runs anyway).
    #[arg(long)]
    pub retain_flows: bool,
    #[arg(long)]
    pub iteration_cap: Option<usize>,
    /// Also run the invariant checks and print their report.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Preset {
    /// Minimal-width intervals at random offsets.
    Random,
    /// Minimal-width intervals alternating between the cheap and expensive
    /// ends by BFS layer.
    WorstIsh,
    /// Every interval is the whole cost range.
    Full,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value = "smoothed")]
    pub model: Model,
    /// bipartite, erdos or layered:<depth>.
    #[arg(long, default_value = "erdos")]
    pub shape: Shape,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    /// Density bound (smoothed, lowerbound).
    #[arg(long, default_value_t = 1.0)]
    pub phi: f64,
    /// Largest integer cost (perturbed-integer).
    #[arg(long, default_value_t = 4)]
    pub c: u32,
    /// Cost interval file; overrides --phi and --preset.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "random")]
    pub preset: Preset,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LowerboundArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub phi: f64,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of consecutive seeds to check.
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Allow φ > 2ⁿ.
    #[arg(long)]
    pub relaxed: bool,
    /// Check the stage network G_i instead of the full network.
    #[arg(long)]
    pub stage: Option<usize>,
    /// Also write the instance for the first seed here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, default_value = "smoothed")]
    pub model: Model,
    /// Comma-separated node counts.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Comma-separated edge counts; `<k>n` and `n^2/<d>` scale with n.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<String>,
    /// Comma-separated φ values (C for perturbed-integer).
    #[arg(long, value_delimiter = ',')]
    pub phi: Vec<f64>,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Directory for results.csv and summary.csv; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock runtimes (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct CostfnArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script plotting the CSV to this path.
    #[arg(long)]
    pub gnuplot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InstanceArgs,
    /// Write the lemma report as CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cycles examined by the near-tie diagnostic.
    #[arg(long, default_value_t = 100_000)]
    pub cycle_budget: usize,
}

/// Failure categories, mapped to exit codes 1, 2 and 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Infeasible(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Infeasible(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Infeasible(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Network(e) => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<LowerBoundError> for CliError {
    fn from(e: LowerBoundError) -> Self {
        match e {
            LowerBoundError::BadParams(m) => CliError::Input(m),
            LowerBoundError::Network(e) => CliError::Input(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_err(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string())),
    }
}

fn load(args: &InstanceArgs) -> Result<TransformedNetwork, CliError> {
    let text = fs::read_to_string(&args.instance).map_err(|e| input_err(format!("{}: {e}", args.instance.display())))?;
    let network = read_instance(&text).map_err(input_err)?;
    let instance = into_single_commodity(network).map_err(input_err)?;
    let z = match args.z {
        Some(z) if z >= 0.0 => z,
        Some(z) => return Err(CliError::Input(format!("z = {z} is negative"))),
        None => max_flow_value(&instance)?,
    };
    Ok(instance.with_z(z))
}

/// Parses `16`, `2n` or `n^2/2` for a given `n`.
fn edge_count(expr: &str, n: usize) -> Result<usize, CliError> {
    let bad = || CliError::Input(format!("bad edge count '{expr}'"));
    if let Some(d) = expr.strip_prefix("n^2/") {
        let d: usize = d.parse().map_err(|_| bad())?;
        return (n * n).checked_div(d).ok_or_else(bad);
    }
    if let Some(k) = expr.strip_suffix('n') {
        let k: usize = if k.is_empty() { 1 } else { k.parse().map_err(|_| bad())? };
        return Ok(k * n);
    }
    expr.parse().map_err(|_| bad())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Lowerbound(a) => cmd_lowerbound(a),
        Command::Experiment(a) => cmd_experiment(a),
        Command::Costfn(a) => cmd_costfn(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ReconstructCheck(a) => cmd_reconstruct(a),
    }
}

/// Parses `std::env::args`, runs, reports errors on stderr and returns the
/// exit code.
pub fn main() -> i32 {
    // clap exits with 2 on usage errors, which here means "infeasible".
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn cmd_solve(a: SolveArgs) -> Result<(), CliError> {
    let instance = load(&a.input)?;
    let options = SspOptions {
        retain_flows: a.retain_flows,
        iteration_cap: a.iteration_cap,
        ..SspOptions::default()
    };
    let trace = solve(&instance, &options)?;
    emit(a.out.as_deref(), &trace.to_csv())?;
    eprintln!(
        "steps={} value={} cost={} outcome={:?}",
        trace.len(),
        trace.final_flow.value(),
        trace.final_flow.cost(&instance),
        trace.outcome
    );
    if a.verify {
        let report = check_lemmas(&instance, &trace).map_err(|e| CliError::Internal(e.to_string()))?;
        eprint!("{report}");
        if !report.all_passed() {
            return Err(CliError::Internal("invariant check failed".into()));
        }
    }
    match trace.outcome {
        Outcome::ReachedZ => Ok(()),
        Outcome::MaxFlowBelowZ => Err(CliError::Infeasible(format!(
            "no flow of value {} exists; maximum is {}",
            trace.z,
            trace.final_flow.value()
        ))),
    }
}

fn cmd_generate(a: GenerateArgs) -> Result<(), CliError> {
    let text = match a.model {
        Model::LowerBound => write_instance(build_for_phi(a.n, a.m, a.phi, a.seed)?.instance.network()),
        Model::PerturbedInteger => {
            let topo = random_topology(a.n, a.m, a.shape, a.seed).map_err(input_err)?;
            write_instance(&perturbed_integer(&topo, a.c, a.seed).map_err(input_err)?.network)
        }
        Model::Smoothed => {
            let topo = random_topology(a.n, a.m, a.shape, a.seed).map_err(input_err)?;
            let spec = match &a.spec {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
                    SmoothedCostSpec::parse(&text).map_err(input_err)?
                }
                None => match a.preset {
                    Preset::Random => SmoothedCostSpec::random_placement(a.phi, Convention::Unit, topo.edge_count(), a.seed),
                    Preset::WorstIsh => SmoothedCostSpec::worst_ish(&topo, a.phi, Convention::Unit),
                    Preset::Full => SmoothedCostSpec::new(a.phi, Convention::Unit),
                },
            };
            write_instance(&sample_costs(&topo, &spec, a.seed).map_err(input_err)?)
        }
    };
    emit(a.out.as_deref(), &text)
}

fn cmd_lowerbound(a: LowerboundArgs) -> Result<(), CliError> {
    let mut out = String::from("seed,steps,predicted,status\n");
    let mut failed = false;
    let params = match a.stage {
        Some(_) => None,
        None if a.phi < 64.0 => None,
        None if a.relaxed => Some(LowerBoundParams::relaxed(a.n, a.m, a.phi)?),
        None => Some(LowerBoundParams::new(a.n, a.m, a.phi)?),
    };
    let stage = a.stage.unwrap_or(1);
    if let Some(path) = &a.out {
        let g = match &params {
            Some(p) => crate::lowerbound::build_full(p, a.seed)?,
            None => build_stage(a.n, a.m, stage, a.seed)?,
        };
        fs::write(path, write_instance(g.instance.network())).map_err(input_err)?;
    }
    for seed in a.seed..a.seed + a.seeds {
        let result = match &params {
            Some(p) => verify_count(p, seed).map(|r| (r.steps, r.predicted)),
            None => build_stage(a.n, a.m, stage, seed).and_then(|g| verify_stage(&g)).map(|r| (r.steps, r.predicted)),
        };
        match result {
            Ok((steps, predicted)) => out.push_str(&format!("{seed},{steps},{predicted},ok\n")),
            Err(LowerBoundError::Tie { .. }) => out.push_str(&format!("{seed},,,tie-rejected\n")),
            Err(LowerBoundError::PredictionMismatch { step, message }) => {
                failed = true;
                out.push_str(&format!("{seed},,,mismatch at step {step}: {message}\n"));
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit(None, &out)?;
    if failed {
        return Err(CliError::Internal("augmentation count differs from prediction".into()));
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs) -> Result<(), CliError> {
    if a.n.is_empty() || a.m.is_empty() || a.phi.is_empty() {
        return Err(CliError::Input("--n, --m and --phi each need at least one value".into()));
    }
    let mut plan = ExperimentPlan { cells: Vec::new(), trials: a.trials, seed_base: a.seed, timing: a.timing };
    for &n in &a.n {
        for m in &a.m {
            let m = edge_count(m, n)?;
            let single = ExperimentPlan::grid(a.model, &[n], &[m], &a.phi, a.trials, a.seed);
            plan.cells.extend(single.cells);
        }
    }
    plan.validate().map_err(CliError::Input)?;
    let results = plan.run();
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(input_err)?;
            fs::write(dir.join("results.csv"), results.to_csv()).map_err(input_err)?;
            fs::write(dir.join("summary.csv"), results.summary_csv()).map_err(input_err)?;
        }
        None => emit(None, &results.to_csv())?,
    }
    for f in &results.failures {
        eprintln!("trial {} of {} failed: {}", f.trial, results.cells[f.cell], f.message);
    }
    if results.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Internal(format!("{} trials failed", results.failures.len())))
    }
}

fn cmd_costfn(a: CostfnArgs) -> Result<(), CliError> {
    let instance = load(&a.input)?;
    let options = SspOptions { record_distances: false, ..SspOptions::default() };
    let trace = solve(&instance, &options)?;
    let cf = cost_function(&trace);
    emit(a.out.as_deref(), &cf.to_csv())?;
    if let Some(script) = &a.gnuplot {
        let csv = a.out.as_deref().map_or("costfn.csv".to_string(), |p| p.display().to_string());
        fs::write(script, CostFunction::gnuplot_script(&csv)).map_err(input_err)?;
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let instance = load(&a.input)?;
    let trace = solve(&instance, &SspOptions::retaining_flows())?;
    let internal = |e: crate::network::NetworkError| CliError::Internal(e.to_string());
    let report = check_lemmas(&instance, &trace).map_err(internal)?;
    let classes = classify(&instance, &trace).map_err(internal)?;
    let gaps = gap_report(&instance, a.cycle_budget)?;
    print!("{report}");
    println!("steps: {} good, {} bad", classes.good_count(), classes.bad_count());
    println!(
        "min path length gap: {}; min |cycle cost|: {} over {} cycles{}",
        gaps.min_path_length_gap,
        gaps.min_cycle_cost,
        gaps.cycles_examined,
        if gaps.truncated { " (budget exhausted)" } else { "" }
    );
    if let Some(path) = &a.out {
        fs::write(path, report.to_csv()).map_err(input_err)?;
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Internal("invariant check failed".into()))
    }
}

fn cmd_reconstruct(a: InstanceArgs) -> Result<(), CliError> {
    let instance = load(&a)?;
    let upper = instance.network().cost_scale().upper();
    // Any other admissible cost works for the invariance re-run.
    let check = check_reconstruct(&instance, |e| upper - instance.edge(e).cost)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    println!(
        "triples={} flow_mismatches={} chain_violations={} invariance_failures={}",
        check.triples,
        check.flow_mismatches.len(),
        check.chain_violations.len(),
        check.invariance_failures.len()
    );
    if check.passed() {
        Ok(())
    } else {
        Err(CliError::Internal("reconstruction differs from the harvested flow".into()))
    }
}
