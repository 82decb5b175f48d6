use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use batopt::bat::WalkScale;
use batopt::benchmarks::{self, PROBLEM_NAMES};
use batopt::harness::{self, emit_report, to_csv_string, to_jsonl_string, AlgorithmSpec, ExperimentSpec, ReportFormat};
use batopt::{ConstraintHandler, RunReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Parser)]
#[command(
    name = "batopt",
    version,
    about = "Bat-algorithm experiments on constrained design benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run independent replicates and write a report.
    Run(RunArgs),
    /// Print the registered benchmark names.
    ListProblems,
    /// Print a benchmark's definition as TOML.
    Describe {
        #[arg(long)]
        problem: String,
    },
}

#[derive(Clone, Copy, Debug, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum HandlerArg {
    Feasibility,
    Penalty,
}

#[derive(Clone, Copy, Debug, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum FormatArg {
    Csv,
    Jsonl,
}

#[derive(Args, Default)]
struct RunArgs {
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// ba, pso, de or ga.
    #[arg(long)]
    algorithm: Option<String>,
    /// Population size (alias: --pop).
    #[arg(long, visible_alias = "pop")]
    bats: Option<usize>,
    #[arg(long)]
    iters: Option<usize>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    handler: Option<HandlerArg>,
    #[arg(long)]
    penalty_coefficient: Option<f64>,
    /// Scale the bat local walk by this fraction of each coordinate's box width.
    #[arg(long)]
    walk_scale: Option<f64>,
    /// Report path; the report goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    problem: Option<String>,
    algorithm: Option<String>,
    #[serde(alias = "pop")]
    bats: Option<usize>,
    iters: Option<usize>,
    runs: Option<usize>,
    seed: Option<u64>,
    handler: Option<HandlerArg>,
    penalty_coefficient: Option<f64>,
    walk_scale: Option<f64>,
    out: Option<PathBuf>,
    format: Option<FormatArg>,
}

fn read_config(path: &Path) -> anyhow::Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn build_spec(args: RunArgs) -> anyhow::Result<(ExperimentSpec, Option<PathBuf>, ReportFormat)> {
    let file = match &args.config {
        Some(path) => read_config(path)?,
        None => FileConfig::default(),
    };
    let Some(problem) = args.problem.or(file.problem) else {
        bail!("--problem is required (see `batopt list-problems`)");
    };
    benchmarks::lookup(&problem)?;
    let algorithm = args.algorithm.or(file.algorithm).unwrap_or_else(|| "ba".into());
    let (default_pop, default_iters) = harness::default_budget(&problem);
    let population = args.bats.or(file.bats).unwrap_or(default_pop);
    let iterations = args.iters.or(file.iters).unwrap_or(default_iters);
    let mut algorithm = harness::algorithm_spec(&algorithm, population, iterations)?;
    if let Some(fraction) = args.walk_scale.or(file.walk_scale) {
        match &mut algorithm {
            AlgorithmSpec::Ba(c) => c.walk_scale = WalkScale::BoxWidth(fraction),
            AlgorithmSpec::Baseline(_) => bail!("--walk-scale only applies to the bat algorithm"),
        }
    }
    let handler = match args.handler.or(file.handler).unwrap_or(HandlerArg::Feasibility) {
        HandlerArg::Feasibility => ConstraintHandler::feasibility_first(),
        HandlerArg::Penalty => {
            ConstraintHandler::static_penalty(args.penalty_coefficient.or(file.penalty_coefficient).unwrap_or(1e6))?
        }
    };
    let spec = ExperimentSpec {
        problem,
        algorithm,
        handler,
        runs: args.runs.or(file.runs).unwrap_or(harness::DEFAULT_RUNS),
        master_seed: args.seed.or(file.seed).unwrap_or(0),
    };
    let format = match args.format.or(file.format).unwrap_or(FormatArg::Csv) {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Jsonl => ReportFormat::Jsonl,
    };
    Ok((spec, args.out.or(file.out), format))
}

fn summarize(report: &RunReport) {
    let a = &report.aggregate;
    eprintln!(
        "{} / {}: {} runs, {} feasible, {} infeasible, {} failed, {} evaluations per run, {:.2}s",
        report.problem,
        report.algorithm,
        a.total_runs,
        a.feasible_runs,
        a.infeasible_runs,
        a.failed_runs,
        report.evaluations_per_run,
        report.wall_time_seconds
    );
    match &a.statistics {
        Some(s) => eprintln!(
            "best {} mean {} worst {} std {}{}",
            s.best,
            s.mean,
            s.worst,
            s.std_dev,
            if s.single_run { " (single run)" } else { "" }
        ),
        None => eprintln!("no feasible run; statistics unavailable"),
    }
}

fn run(args: RunArgs) -> anyhow::Result<ExitCode> {
    let (spec, out, format) = build_spec(args)?;
    let report = harness::run_experiment(&spec)?;
    match &out {
        Some(path) => emit_report(&report, format, path)?,
        None => print!(
            "{}",
            match format {
                ReportFormat::Csv => to_csv_string(&report)?,
                ReportFormat::Jsonl => to_jsonl_string(&report)?,
            }
        ),
    }
    summarize(&report);
    Ok(if report.aggregate.feasible_runs == 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::ListProblems => {
            for name in PROBLEM_NAMES {
                println!("{name}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Describe { problem } => benchmarks::lookup(&problem)
            .map_err(anyhow::Error::from)
            .and_then(|p| Ok(toml::to_string_pretty(&p.describe())?))
            .map(|text| {
                print!("{text}");
                ExitCode::SUCCESS
            }),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::FAILURE
    })
}
