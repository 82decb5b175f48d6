//! Independent seeded replicates, their statistics, and report files.

mod report;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{run_baseline, Algorithm, BaselineConfig};
use crate::bat::{self, SwarmConfig, WalkScale};
use crate::benchmarks;
use crate::constraints::ConstraintHandler;
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::rng::derive_seed;
use crate::solution::OptimizationResult;

pub use report::{
    emit_report, read_csv, read_jsonl, to_csv_string, to_jsonl_string, CsvReport, ReportFormat, CSV_FIXED_COLUMNS,
};

pub const DEFAULT_RUNS: usize = 50;

/// Which optimizer to replicate, with its full configuration. The seed inside
/// the configuration is ignored; each replicate gets a derived one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "snake_case")]
pub enum AlgorithmSpec {
    Ba(SwarmConfig),
    Baseline(BaselineConfig),
}

impl AlgorithmSpec {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Ba(_) => "ba",
            Self::Baseline(c) => c.algorithm.name(),
        }
    }

    /// Population size and objective evaluations per run.
    pub fn budget(&self) -> (usize, usize) {
        match self {
            Self::Ba(c) => (c.n_bats, c.n_bats * (1 + c.max_iterations)),
            Self::Baseline(c) => (c.population, c.max_evaluations),
        }
    }

    fn run(&self, problem: &Problem, handler: &ConstraintHandler, seed: u64) -> Result<OptimizationResult> {
        match self {
            Self::Ba(c) => bat::run(problem, &SwarmConfig { seed, ..c.clone() }, handler),
            Self::Baseline(c) => run_baseline(problem, &BaselineConfig { seed, ..c.clone() }, handler),
        }
    }
}

/// Local walk step used by experiments, as a fraction of each box width.
/// Problem-unit steps stall on boxes spanning several orders of magnitude.
pub const DEFAULT_WALK_FRACTION: f64 = 0.03;

/// Population size and iteration count used for a problem when none is given:
/// 20 for the car side impact, 2000 iterations for the three-bar truss,
/// 25 x 1000 otherwise.
pub fn default_budget(problem: &str) -> (usize, usize) {
    match problem {
        "car_side_impact" => (20, 1000),
        "three_bar_truss" => (25, 2000),
        _ => (25, 1000),
    }
}

/// Matching configurations for `algorithm` with `population` members and
/// `iterations` iterations. Baselines get the bat engine's evaluation count,
/// `population * (iterations + 1)`.
pub fn algorithm_spec(algorithm: &str, population: usize, iterations: usize) -> Result<AlgorithmSpec> {
    let evaluations = population * (iterations + 1);
    Ok(match algorithm {
        "ba" => AlgorithmSpec::Ba(SwarmConfig {
            walk_scale: WalkScale::BoxWidth(DEFAULT_WALK_FRACTION),
            ..SwarmConfig::with_budget(population, iterations)
        }),
        "pso" => AlgorithmSpec::Baseline(BaselineConfig::new(Algorithm::Pso, population, evaluations)),
        "de" => AlgorithmSpec::Baseline(BaselineConfig::new(Algorithm::De, population, evaluations)),
        "ga" => AlgorithmSpec::Baseline(BaselineConfig::new(Algorithm::Ga, population, evaluations)),
        other => {
            return Err(Error::InvalidConfig(format!(
                "unknown algorithm '{other}' (expected ba, pso, de or ga)"
            )))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub problem: String,
    pub algorithm: AlgorithmSpec,
    pub handler: ConstraintHandler,
    pub runs: usize,
    pub master_seed: u64,
}

impl ExperimentSpec {
    pub fn new(problem: impl Into<String>, algorithm: AlgorithmSpec) -> Self {
        Self {
            problem: problem.into(),
            algorithm,
            handler: ConstraintHandler::default(),
            runs: DEFAULT_RUNS,
            master_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be at least 1".into()));
        }
        self.handler.validate()?;
        match &self.algorithm {
            AlgorithmSpec::Ba(c) => c.validate(),
            AlgorithmSpec::Baseline(c) => c.validate(),
        }
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.runs as u64)
            .map(|i| derive_seed(self.master_seed, i))
            .collect()
    }
}

/// Outcome of one replicate. A failed replicate keeps its error message and
/// has no best point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub run_index: usize,
    pub seed: u64,
    pub best_objective: Option<f64>,
    pub feasible: bool,
    pub total_violation: Option<f64>,
    pub evaluations: usize,
    pub position: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunRecord {
    fn from_result(run_index: usize, seed: u64, result: Result<OptimizationResult>, tolerance: f64) -> Self {
        match result {
            Ok(r) => Self {
                run_index,
                seed,
                best_objective: Some(r.best.objective),
                feasible: r.best.is_feasible(tolerance),
                total_violation: Some(r.best.total_violation),
                evaluations: r.evaluations,
                position: r.best.position,
                error: None,
            },
            Err(e) => Self {
                run_index,
                seed,
                best_objective: None,
                feasible: false,
                total_violation: None,
                evaluations: 0,
                position: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    }
}

/// Best/mean/worst/sample standard deviation over feasible run bests.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Statistics {
    pub best: f64,
    pub mean: f64,
    pub worst: f64,
    /// Sample standard deviation (n - 1); 0 when only one run is included.
    pub std_dev: f64,
    pub count: usize,
    /// Set when `count == 1` and `std_dev` is zero by convention.
    pub single_run: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub total_runs: usize,
    pub feasible_runs: usize,
    pub infeasible_runs: usize,
    pub failed_runs: usize,
    /// Absent when no run ended feasible.
    pub statistics: Option<Statistics>,
    /// Best vector over feasible runs (lowest run index on ties).
    pub best_position: Option<Vec<f64>>,
}

/// Statistics over feasible runs only; infeasible and failed runs are counted.
/// Independent of record order.
pub fn aggregate(records: &[RunRecord]) -> Result<Aggregate> {
    if records.is_empty() {
        return Err(Error::Report("cannot aggregate zero runs".into()));
    }
    let failed_runs = records.iter().filter(|r| r.error.is_some()).count();
    let mut feasible: Vec<&RunRecord> = records
        .iter()
        .filter(|r| r.error.is_none() && r.feasible && r.best_objective.is_some())
        .collect();
    feasible.sort_by(|a, b| {
        a.best_objective
            .unwrap()
            .total_cmp(&b.best_objective.unwrap())
            .then(a.run_index.cmp(&b.run_index))
    });
    let values: Vec<f64> = feasible.iter().map(|r| r.best_objective.unwrap()).collect();
    let statistics = (!values.is_empty()).then(|| {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let std_dev = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Statistics {
            best: values[0],
            // Rounding can push the mean a hair outside [best, worst].
            mean: mean.clamp(values[0], values[n - 1]),
            worst: values[n - 1],
            std_dev,
            count: n,
            single_run: n == 1,
        }
    });
    Ok(Aggregate {
        total_runs: records.len(),
        feasible_runs: feasible.len(),
        infeasible_runs: records.len() - feasible.len() - failed_runs,
        failed_runs,
        statistics,
        best_position: feasible.first().map(|r| r.position.clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub algorithm: String,
    pub dimension: usize,
    pub master_seed: u64,
    pub population: usize,
    pub evaluations_per_run: usize,
    /// In run-index order.
    pub runs: Vec<RunRecord>,
    pub aggregate: Aggregate,
    /// True when some replicate failed.
    pub partial: bool,
    /// Not covered by determinism guarantees.
    pub wall_time_seconds: f64,
}

/// Look the problem up by name and run the experiment.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RunReport> {
    let problem = benchmarks::lookup(&spec.problem)?;
    run_experiment_on(&problem, spec)
}

/// Run `spec.runs` replicates on `problem` concurrently. Replicate `i` uses
/// seed `derive_seed(master_seed, i)`; a failing replicate is recorded and
/// does not stop the others.
pub fn run_experiment_on(problem: &Problem, spec: &ExperimentSpec) -> Result<RunReport> {
    spec.validate()?;
    let start = Instant::now();
    let runs: Vec<RunRecord> = spec
        .seeds()
        .into_par_iter()
        .enumerate()
        .map(|(i, seed)| {
            let result = spec.algorithm.run(problem, &spec.handler, seed);
            RunRecord::from_result(i, seed, result, spec.handler.tolerance)
        })
        .collect();
    let aggregate = aggregate(&runs)?;
    let (population, evaluations_per_run) = spec.algorithm.budget();
    Ok(RunReport {
        problem: problem.name().to_string(),
        algorithm: spec.algorithm.name().to_string(),
        dimension: problem.dimension(),
        master_seed: spec.master_seed,
        population,
        evaluations_per_run,
        partial: aggregate.failed_runs > 0,
        runs,
        aggregate,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn record(i: usize, objective: f64, feasible: bool) -> RunRecord {
        RunRecord {
            run_index: i,
            seed: i as u64,
            best_objective: Some(objective),
            feasible,
            total_violation: Some(if feasible { 0.0 } else { 1.0 }),
            evaluations: 10,
            position: vec![objective],
            error: None,
        }
    }

    #[test]
    fn arithmetic() {
        let a = aggregate(&[record(0, 1.0, true), record(1, 2.0, true), record(2, 3.0, true)]).unwrap();
        let s = a.statistics.unwrap();
        assert_eq!((s.best, s.worst, s.count), (1.0, 3.0, 3));
        assert_abs_diff_eq!(s.mean, 2.0);
        assert_abs_diff_eq!(s.std_dev, 1.0);
        assert_eq!(a.best_position, Some(vec![1.0]));
    }

    #[test]
    fn single_record_flagged() {
        let s = aggregate(&[record(0, 5.0, true)]).unwrap().statistics.unwrap();
        assert_eq!(s.std_dev, 0.0);
        assert!(s.single_run);
        assert_eq!((s.best, s.mean, s.worst), (5.0, 5.0, 5.0));
    }

    #[test]
    fn infeasible_excluded_but_counted() {
        let a = aggregate(&[record(0, 1.0, false), record(1, 4.0, true), record(2, 6.0, true)]).unwrap();
        assert_eq!(a.infeasible_runs, 1);
        assert_eq!(a.feasible_runs, 2);
        let s = a.statistics.unwrap();
        assert_eq!(s.best, 4.0);
        assert_abs_diff_eq!(s.mean, 5.0);
    }

    #[test]
    fn no_feasible_runs_means_no_statistics() {
        let a = aggregate(&[record(0, 1.0, false)]).unwrap();
        assert!(a.statistics.is_none());
        assert!(a.best_position.is_none());
        assert!(aggregate(&[]).is_err());
    }

    #[test]
    fn failed_runs_counted() {
        let mut bad = record(1, 0.0, true);
        bad.error = Some("boom".into());
        bad.best_objective = None;
        let a = aggregate(&[record(0, 2.0, true), bad]).unwrap();
        assert_eq!((a.failed_runs, a.feasible_runs, a.infeasible_runs), (1, 1, 0));
    }

    #[test]
    fn budgets() {
        assert_eq!(default_budget("car_side_impact"), (20, 1000));
        assert_eq!(default_budget("three_bar_truss"), (25, 2000));
        assert_eq!(default_budget("heat_exchanger"), (25, 1000));
        let spec = algorithm_spec("de", 20, 1000).unwrap();
        assert_eq!(spec.budget(), (20, 20_020));
        assert_eq!(algorithm_spec("ba", 20, 1000).unwrap().budget(), (20, 20_020));
        assert!(algorithm_spec("sa", 20, 10).is_err());
    }
}
