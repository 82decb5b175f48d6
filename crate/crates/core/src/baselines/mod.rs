//! Reference population optimizers for comparison with the bat algorithm.
//!
//! Textbook variants only: global-best PSO with inertia weight,
//! DE/rand/1/bin, and a real-coded GA (binary tournament, blend crossover,
//! Gaussian mutation, one elite). They share the problem's clamp/snap repair
//! and the constraint handler's ranking with the bat engine, and they stop at
//! exactly `max_evaluations` objective calls.

mod de;
mod ga;
mod pso;

use serde::{Deserialize, Serialize};

use crate::constraints::{ConstraintHandler, EvaluatedPoint};
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::rng::RandomStream;
use crate::solution::OptimizationResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Pso,
    De,
    Ga,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Self::Pso => "pso",
            Self::De => "de",
            Self::Ga => "ga",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PsoParams {
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity clamp as a fraction of each coordinate's box width.
    pub max_velocity_fraction: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            max_velocity_fraction: 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DeParams {
    pub differential_weight: f64,
    pub crossover_rate: f64,
}

impl Default for DeParams {
    fn default() -> Self {
        Self {
            differential_weight: 0.5,
            crossover_rate: 0.9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaParams {
    pub crossover_rate: f64,
    /// Per-gene mutation probability; `None` means `1 / d`.
    pub mutation_rate: Option<f64>,
    /// Mutation standard deviation as a fraction of the box width.
    pub mutation_scale: f64,
    pub tournament_size: usize,
    /// BLX-alpha extension of the parents' interval.
    pub blend_alpha: f64,
    pub elites: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            crossover_rate: 0.9,
            mutation_rate: None,
            mutation_scale: 0.02,
            tournament_size: 2,
            blend_alpha: 0.5,
            elites: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaselineConfig {
    pub algorithm: Algorithm,
    pub population: usize,
    pub max_evaluations: usize,
    #[serde(default)]
    pub pso: PsoParams,
    #[serde(default)]
    pub de: DeParams,
    #[serde(default)]
    pub ga: GaParams,
    #[serde(default)]
    pub seed: u64,
}

impl BaselineConfig {
    pub fn new(algorithm: Algorithm, population: usize, max_evaluations: usize) -> Self {
        Self {
            algorithm,
            population,
            max_evaluations,
            pso: PsoParams::default(),
            de: DeParams::default(),
            ga: GaParams::default(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        let min_population = match self.algorithm {
            Algorithm::Pso => 1,
            Algorithm::De => 4,
            Algorithm::Ga => 2,
        };
        if self.population < min_population {
            return bad(format!(
                "{} needs a population of at least {min_population}, got {}",
                self.algorithm.name(),
                self.population
            ));
        }
        if self.max_evaluations < self.population {
            return bad(format!(
                "evaluation budget {} is smaller than the population {}",
                self.max_evaluations, self.population
            ));
        }
        match self.algorithm {
            Algorithm::Pso => {
                let p = &self.pso;
                if !(p.inertia.is_finite() && p.inertia >= 0.0 && p.inertia < 1.0) {
                    return bad(format!("PSO inertia must lie in [0, 1), got {}", p.inertia));
                }
                if !(p.cognitive >= 0.0 && p.social >= 0.0 && p.cognitive.is_finite() && p.social.is_finite()) {
                    return bad("PSO acceleration coefficients must be non-negative".into());
                }
                if !(p.max_velocity_fraction > 0.0 && p.max_velocity_fraction.is_finite()) {
                    return bad("PSO velocity clamp must be positive".into());
                }
            }
            Algorithm::De => {
                let p = &self.de;
                if !(p.differential_weight > 0.0 && p.differential_weight <= 2.0) {
                    return bad(format!("DE weight must lie in (0, 2], got {}", p.differential_weight));
                }
                if !(0.0..=1.0).contains(&p.crossover_rate) {
                    return bad(format!(
                        "DE crossover rate must lie in [0, 1], got {}",
                        p.crossover_rate
                    ));
                }
            }
            Algorithm::Ga => {
                let p = &self.ga;
                if !(0.0..=1.0).contains(&p.crossover_rate) {
                    return bad(format!(
                        "GA crossover rate must lie in [0, 1], got {}",
                        p.crossover_rate
                    ));
                }
                if let Some(m) = p.mutation_rate {
                    if !(0.0..=1.0).contains(&m) {
                        return bad(format!("GA mutation rate must lie in [0, 1], got {m}"));
                    }
                }
                if !(p.mutation_scale >= 0.0 && p.mutation_scale.is_finite()) {
                    return bad("GA mutation scale must be non-negative".into());
                }
                if p.tournament_size == 0 {
                    return bad("GA tournament size must be positive".into());
                }
                if !(p.blend_alpha >= 0.0 && p.blend_alpha.is_finite()) {
                    return bad("GA blend alpha must be non-negative".into());
                }
                if p.elites >= self.population {
                    return bad("GA elites must be fewer than the population".into());
                }
            }
        }
        Ok(())
    }
}

/// Run the configured baseline.
pub fn run_baseline(
    problem: &Problem,
    config: &BaselineConfig,
    handler: &ConstraintHandler,
) -> Result<OptimizationResult> {
    config.validate()?;
    handler.validate()?;
    let mut stream = RandomStream::new(config.seed);
    let mut budget = Budget::new(problem, handler, config.max_evaluations);
    let generations = match config.algorithm {
        Algorithm::Pso => pso::run(problem, config, &mut budget, &mut stream)?,
        Algorithm::De => de::run(problem, config, &mut budget, &mut stream)?,
        Algorithm::Ga => ga::run(problem, config, &mut budget, &mut stream)?,
    };
    Ok(budget.finish(generations))
}

/// Counts objective calls, refuses calls past the budget, and tracks the
/// best-so-far point and its trace.
pub(crate) struct Budget<'a> {
    problem: &'a Problem,
    handler: &'a ConstraintHandler,
    used: usize,
    max: usize,
    best: Option<EvaluatedPoint>,
    trace: Vec<EvaluatedPoint>,
}

impl<'a> Budget<'a> {
    fn new(problem: &'a Problem, handler: &'a ConstraintHandler, max: usize) -> Self {
        Self {
            problem,
            handler,
            used: 0,
            max,
            best: None,
            trace: Vec::new(),
        }
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.used >= self.max
    }

    /// Repairs `x` in place and evaluates it; `None` once the budget is spent.
    pub(crate) fn evaluate(&mut self, x: &mut [f64]) -> Result<Option<EvaluatedPoint>> {
        if self.exhausted() {
            return Ok(None);
        }
        self.problem.repair(x);
        let e = self.problem.evaluate(x)?;
        self.used += 1;
        if self.best.as_ref().is_none_or(|b| self.handler.is_better(&e, b)) {
            self.best = Some(e.clone());
        }
        Ok(Some(e))
    }

    pub(crate) fn handler(&self) -> &ConstraintHandler {
        self.handler
    }

    /// Record the best-so-far point at the end of a generation.
    pub(crate) fn mark(&mut self) {
        if let Some(b) = &self.best {
            self.trace.push(b.clone());
        }
    }

    fn finish(self, generations: usize) -> OptimizationResult {
        OptimizationResult {
            best: self.best.expect("budget covers the initial population"),
            evaluations: self.used,
            iterations: generations,
            trace: self.trace,
        }
    }
}

/// Uniform random point in the box (zero-width coordinates consume a draw).
pub(crate) fn random_point(problem: &Problem, stream: &mut RandomStream) -> Vec<f64> {
    problem
        .lower()
        .iter()
        .zip(problem.upper())
        .map(|(lo, hi)| lo + (hi - lo) * stream.uniform01())
        .collect()
}

pub(crate) fn widths(problem: &Problem) -> Vec<f64> {
    problem
        .lower()
        .iter()
        .zip(problem.upper())
        .map(|(lo, hi)| hi - lo)
        .collect()
}
