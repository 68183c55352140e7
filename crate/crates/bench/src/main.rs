use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use tspopt::datasets::ATT48_TSPLIB;
use tspopt::tsplib::parse_instance;
use tspopt::{
    brute_force, held_karp, CrossoverVariant, DownhillAllowance, GaConfig, HcConfig, HcVariant,
    Instance, Metric, Scalar, SelectionScheme, TspError,
};
use tspopt_bench::output::{
    write_comparison_csv, write_comparison_json, write_csv, write_json, Metadata,
};
use tspopt_bench::{compare, run_experiment, ExperimentOptions, Solver};

/// Genetic-algorithm and hill-climbing TSP solvers with a benchmark harness.
#[derive(Parser)]
#[command(name = "tspopt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a solver once and print the tour and its length.
    Solve(SolveArgs),
    /// Run one solver over many seeded trials.
    Bench(BenchArgs),
    /// Run two solver settings over the same trial seeds.
    Compare(CompareArgs),
    /// Solve a small instance exactly.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// TSPLIB or coordinate-list file; `-` reads stdin and `builtin:att48`
    /// loads the bundled instance.
    #[arg(long)]
    instance: String,
    /// euclidean, manhattan, wmanhattan:WX,WY or wchebyshev:WX,WY.
    #[arg(long, default_value = "euclidean")]
    metric: String,
    #[arg(long, value_enum, default_value_t = Precision::F64)]
    precision: Precision,
}

#[derive(Clone, Copy, ValueEnum)]
enum Precision {
    F32,
    F64,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Algorithm {
    Ga,
    Hc,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Variant {
    Baseline,
    Modified,
}

#[derive(Clone, Copy, ValueEnum)]
enum Selection {
    Shifted,
    LengthProportional,
}

#[derive(Clone, Copy, ValueEnum)]
enum Allowance {
    Replenishing,
    OncePerRun,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value_t = Algorithm::Ga)]
    algorithm: Algorithm,
    #[arg(long, value_enum, default_value_t = Variant::Baseline)]
    variant: Variant,
    /// GA population size.
    #[arg(long, default_value_t = 200)]
    population: usize,
    /// GA generation limit.
    #[arg(long, default_value_t = 30)]
    generations: u64,
    /// GA stops after this many generations without improvement.
    #[arg(long, default_value_t = 10)]
    stall: u64,
    #[arg(long, default_value_t = 0.1)]
    mutation_rate: f64,
    /// Carry the best tour of each generation into the next.
    #[arg(long)]
    elitism: bool,
    #[arg(long, value_enum, default_value_t = Selection::Shifted)]
    selection: Selection,
    /// HC restarts after the first run.
    #[arg(long, default_value_t = 0)]
    restarts: u64,
    /// HC step cap per run; reaching it aborts the run.
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    /// When the modified HC may take another downhill step.
    #[arg(long, value_enum, default_value_t = Allowance::Replenishing)]
    allowance: Allowance,
}

impl SolverArgs {
    fn solver(&self, seed: u64) -> Solver {
        self.solver_with(
            self.algorithm,
            self.variant,
            self.population,
            self.restarts,
            seed,
        )
    }

    fn solver_with(
        &self,
        algorithm: Algorithm,
        variant: Variant,
        population: usize,
        restarts: u64,
        seed: u64,
    ) -> Solver {
        match algorithm {
            Algorithm::Ga => Solver::Ga(GaConfig {
                population_size: population,
                mutation_rate: self.mutation_rate,
                max_generations: self.generations,
                max_stall_generations: self.stall,
                crossover_variant: match variant {
                    Variant::Baseline => CrossoverVariant::Baseline,
                    Variant::Modified => CrossoverVariant::ReversalInvariant,
                },
                selection: match self.selection {
                    Selection::Shifted => SelectionScheme::ShiftedRoulette,
                    Selection::LengthProportional => SelectionScheme::LengthProportional,
                },
                elitism: self.elitism,
                seed,
            }),
            Algorithm::Hc => Solver::Hc(HcConfig {
                restarts,
                variant: match variant {
                    Variant::Baseline => HcVariant::Baseline,
                    Variant::Modified => HcVariant::Modified,
                },
                max_steps_per_run: self.max_steps,
                seed,
                allowance: match self.allowance {
                    Allowance::Replenishing => DownhillAllowance::Replenishing,
                    Allowance::OncePerRun => DownhillAllowance::OncePerRun,
                },
                ..HcConfig::default()
            }),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Experiment seed; trial seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores. Does not affect results.
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Omit wall times and the generation timestamp so identical
    /// invocations give byte-identical output.
    #[arg(long)]
    deterministic: bool,
}

impl RunArgs {
    fn options(&self) -> ExperimentOptions {
        ExperimentOptions {
            trials: self.trials,
            experiment_seed: self.seed,
            parallelism: self.parallelism,
            record_timing: !self.deterministic,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print a JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    run: RunArgs,
}

/// Arm a uses the shared solver flags; arm b copies them and applies the
/// `-b` overrides.
#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = Variant::Modified)]
    variant_b: Variant,
    #[arg(long)]
    algorithm_b: Option<Algorithm>,
    #[arg(long)]
    population_b: Option<usize>,
    #[arg(long)]
    restarts_b: Option<u64>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    HeldKarp,
    BruteForce,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value_t = Method::HeldKarp)]
    method: Method,
    #[arg(long)]
    json: bool,
}

enum CliError {
    Config(String),
    Parse(String),
    Aborted(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Aborted(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Parse(m) | CliError::Aborted(m) | CliError::Io(m) => m,
        }
    }
}

impl From<TspError> for CliError {
    fn from(e: TspError) -> Self {
        match e {
            TspError::RunAborted { .. } => CliError::Aborted(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn read_source(source: &str) -> Result<(String, String), CliError> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return match name {
            "att48" => Ok((ATT48_TSPLIB.to_string(), "att48".into())),
            _ => Err(CliError::Parse(format!(
                "unknown built-in instance {name:?}"
            ))),
        };
    }
    if source == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Parse(format!("reading stdin: {e}")))?;
        return Ok((text, "stdin".into()));
    }
    let text = fs::read_to_string(source).map_err(|e| CliError::Parse(format!("{source}: {e}")))?;
    let name = Path::new(source)
        .file_stem()
        .map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((text, name))
}

fn load<T: Scalar>(args: &InstanceArgs) -> Result<Instance<T>, CliError> {
    let metric: Metric<T> = args.metric.parse()?;
    let (text, name) = read_source(&args.instance)?;
    let instance = parse_instance::<T>(&text, &name)
        .map_err(|e| CliError::Parse(format!("{}: {e}", args.instance)))?;
    Ok(instance.with_metric(metric)?)
}

fn precision_name(p: Precision) -> &'static str {
    match p {
        Precision::F32 => "f32",
        Precision::F64 => "f64",
    }
}

fn emit(
    out: &Option<String>,
    render: impl FnOnce(&mut Vec<u8>) -> io::Result<()>,
) -> Result<(), CliError> {
    let mut buf = Vec::new();
    render(&mut buf)?;
    match out {
        Some(path) => fs::write(path, &buf).map_err(|e| CliError::Io(format!("{path}: {e}")))?,
        None => io::stdout().lock().write_all(&buf)?,
    }
    Ok(())
}

fn solve<T: Scalar>(args: &SolveArgs) -> Result<(), CliError> {
    let instance = load::<T>(&args.instance)?;
    let result = args.solver.solver(args.seed).run(&instance, args.seed)?;
    let mut out = io::stdout().lock();
    if args.json {
        let value = json!({
            "instance": instance.name(),
            "locations": instance.len(),
            "metric": instance.metric().to_string(),
            "tour": result.best_tour.as_slice(),
            "length": result.best_length_f64(),
            "iterations": result.iterations,
            "fitness_evaluations": result.fitness_evaluations,
            "wall_time_ms": result.wall_time_ms,
            "runs": result.runs,
            "early_outs": result.early_outs,
            "aborted_runs": result.aborted_runs,
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).map_err(io::Error::from)?
        )?;
    } else {
        writeln!(
            out,
            "instance: {} ({} locations, {})",
            instance.name(),
            instance.len(),
            instance.metric()
        )?;
        writeln!(out, "length: {}", result.best_length)?;
        writeln!(out, "tour: {}", result.best_tour)?;
        writeln!(out, "iterations: {}", result.iterations)?;
        writeln!(out, "fitness_evaluations: {}", result.fitness_evaluations)?;
        writeln!(out, "runs: {}", result.runs)?;
        writeln!(out, "wall_time_ms: {:.3}", result.wall_time_ms)?;
    }
    Ok(())
}

fn bench<T: Scalar>(args: &BenchArgs) -> Result<(), CliError> {
    let instance = load::<T>(&args.instance)?;
    let solver = args.solver.solver(0);
    let options = args.run.options();
    let stats = run_experiment(&instance, &solver, &options)?;
    let meta = Metadata::new(
        instance.name(),
        instance.len(),
        instance.metric().to_string(),
        precision_name(args.instance.precision),
        &options,
    );
    emit(&args.run.out, |w| match args.run.format {
        Format::Csv => write_csv(w, &meta, &solver, &stats),
        Format::Json => write_json(w, &meta, &solver, &stats),
    })?;
    if args.run.out.is_some() {
        let s = &stats.summary;
        eprintln!(
            "{} trials: mean {} ± {} (min {}, max {})",
            s.count, s.mean, s.std, s.min, s.max
        );
    }
    Ok(())
}

fn compare_cmd<T: Scalar>(args: &CompareArgs) -> Result<(), CliError> {
    let instance = load::<T>(&args.instance)?;
    let s = &args.solver;
    let a = s.solver(0);
    let b = s.solver_with(
        args.algorithm_b.unwrap_or(s.algorithm),
        args.variant_b,
        args.population_b.unwrap_or(s.population),
        args.restarts_b.unwrap_or(s.restarts),
        0,
    );
    let options = args.run.options();
    let report = compare(&instance, &a, &b, &options)?;
    let meta = Metadata::new(
        instance.name(),
        instance.len(),
        instance.metric().to_string(),
        precision_name(args.instance.precision),
        &options,
    );
    emit(&args.run.out, |w| match args.run.format {
        Format::Csv => write_comparison_csv(w, &meta, (&a, &b), &report),
        Format::Json => write_comparison_json(w, &meta, (&a, &b), &report),
    })?;
    if args.run.out.is_some() {
        eprintln!(
            "mean a {} / mean b {}: improvement {:.2}%",
            report.a.summary.mean,
            report.b.summary.mean,
            100.0 * report.improvement
        );
    }
    Ok(())
}

fn oracle<T: Scalar>(args: &OracleArgs) -> Result<(), CliError> {
    let instance = load::<T>(&args.instance)?;
    let result = match args.method {
        Method::HeldKarp => held_karp(&instance)?,
        Method::BruteForce => brute_force(&instance)?,
    };
    let mut out = io::stdout().lock();
    if args.json {
        let value = json!({
            "instance": instance.name(),
            "locations": instance.len(),
            "metric": instance.metric().to_string(),
            "tour": result.optimal_tour.as_slice(),
            "length": result.optimal_length.to_f64_lossy(),
            "nodes_expanded": result.nodes_expanded,
        });
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&value).map_err(io::Error::from)?
        )?;
    } else {
        writeln!(
            out,
            "instance: {} ({} locations, {})",
            instance.name(),
            instance.len(),
            instance.metric()
        )?;
        writeln!(out, "length: {}", result.optimal_length)?;
        writeln!(out, "tour: {}", result.optimal_tour)?;
        writeln!(out, "nodes_expanded: {}", result.nodes_expanded)?;
    }
    Ok(())
}

fn dispatch<T: Scalar>(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Solve(args) => solve::<T>(args),
        Command::Bench(args) => bench::<T>(args),
        Command::Compare(args) => compare_cmd::<T>(args),
        Command::Oracle(args) => oracle::<T>(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let precision = match &cli.command {
        Command::Solve(a) => a.instance.precision,
        Command::Bench(a) => a.instance.precision,
        Command::Compare(a) => a.instance.precision,
        Command::Oracle(a) => a.instance.precision,
    };
    let outcome = match precision {
        Precision::F32 => dispatch::<f32>(&cli.command),
        Precision::F64 => dispatch::<f64>(&cli.command),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tspopt: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
