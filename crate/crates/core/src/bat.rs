//! The bat algorithm engine.
//!
//! Each bat carries a position, a velocity, a frequency, a loudness `A_i`
//! and a pulse emission rate `r_i`. Per iteration every bat, in index order:
//!
//! 1. draws `beta`, sets `f_i = f_min + (f_max - f_min) * beta`, updates
//!    `v_i += (x_i - x_*) * f_i` and proposes `x_i + v_i` (clamped to the box);
//! 2. if a uniform draw exceeds `r_i`, replaces the proposal by a local random
//!    walk `x_* + eps * <A>` around the global best, `<A>` being the mean
//!    loudness of the swarm at the start of the iteration;
//! 3. evaluates the proposal;
//! 4. accepts it into its own state when a uniform draw is below `A_i` and the
//!    proposal beats the bat's current point, then decays `A_i <- alpha * A_i`
//!    and raises `r_i <- r_i^0 (1 - exp(-gamma * t))`;
//! 5. replaces the global best if the proposal beats it.
//!
//! Random draws per bat come from the run's single stream in the order
//! `beta`, pulse draw, walk `eps` (one per dimension, only when walking),
//! acceptance draw. Initialization draws, per bat: position coordinates,
//! frequency, loudness, initial pulse rate.

use serde::{Deserialize, Serialize};

use crate::constraints::{ConstraintHandler, EvaluatedPoint};
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::rng::RandomStream;
use crate::solution::OptimizationResult;

/// What `t` means in the pulse-rate schedule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseSchedule {
    /// `t` is the number of acceptances of that bat.
    #[default]
    AcceptanceCount,
    /// `t` is the global iteration counter at the time of acceptance.
    GlobalIteration,
    /// `r_i` is fixed at `r_i^0` from initialization on.
    Constant,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoudnessSchedule {
    /// `A_i <- alpha * A_i` on every acceptance.
    #[default]
    Geometric,
    /// Loudness never changes.
    Constant,
}

/// Unit of the local random walk step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "fraction", rename_all = "snake_case")]
pub enum WalkScale {
    /// Step `eps * <A>` in problem units.
    #[default]
    Absolute,
    /// Step `eps * <A> * fraction * (upper_k - lower_k)` per coordinate.
    BoxWidth(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SwarmConfig {
    pub n_bats: usize,
    pub max_iterations: usize,
    pub f_min: f64,
    pub f_max: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub loudness_init_range: [f64; 2],
    pub pulse_init_range: [f64; 2],
    pub pulse_schedule: PulseSchedule,
    pub loudness_schedule: LoudnessSchedule,
    /// When false, the `rand < A_i` acceptance gate always passes.
    pub loudness_gate: bool,
    pub walk_scale: WalkScale,
    pub seed: u64,
}

impl Default for SwarmConfig {
    fn default() -> Self {
        Self {
            n_bats: 25,
            max_iterations: 1000,
            f_min: 0.0,
            f_max: 100.0,
            alpha: 0.9,
            gamma: 0.9,
            loudness_init_range: [1.0, 2.0],
            pulse_init_range: [0.0, 1.0],
            pulse_schedule: PulseSchedule::default(),
            loudness_schedule: LoudnessSchedule::default(),
            loudness_gate: true,
            walk_scale: WalkScale::default(),
            seed: 0,
        }
    }
}

impl SwarmConfig {
    pub fn with_budget(n_bats: usize, max_iterations: usize) -> Self {
        Self {
            n_bats,
            max_iterations,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n_bats == 0 {
            return bad("n_bats must be positive".into());
        }
        if !(self.f_min.is_finite() && self.f_max.is_finite() && self.f_min < self.f_max) {
            return bad(format!(
                "need finite f_min < f_max, got [{}, {}]",
                self.f_min, self.f_max
            ));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return bad(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma must be positive, got {}", self.gamma));
        }
        let [a_lo, a_hi] = self.loudness_init_range;
        if !(a_lo >= 0.0 && a_lo <= a_hi && a_hi.is_finite()) {
            return bad(format!(
                "loudness range must satisfy 0 <= lo <= hi, got [{a_lo}, {a_hi}]"
            ));
        }
        let [r_lo, r_hi] = self.pulse_init_range;
        if !(0.0..=1.0).contains(&r_lo) || !(0.0..=1.0).contains(&r_hi) || r_lo > r_hi {
            return bad(format!(
                "pulse range must satisfy 0 <= lo <= hi <= 1, got [{r_lo}, {r_hi}]"
            ));
        }
        if let WalkScale::BoxWidth(fraction) = self.walk_scale {
            if !(fraction > 0.0 && fraction.is_finite()) {
                return bad(format!("walk fraction must be positive, got {fraction}"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bat {
    /// Current accepted position (same as `best_eval.position`).
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub frequency: f64,
    pub loudness: f64,
    pub pulse_rate: f64,
    pub initial_pulse_rate: f64,
    pub acceptances: usize,
    pub best_eval: EvaluatedPoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwarmState {
    pub bats: Vec<Bat>,
    pub global_best: EvaluatedPoint,
    pub iteration: usize,
    pub evaluation_count: usize,
    /// Number of local random walks performed so far.
    pub local_walks: usize,
}

impl SwarmState {
    pub fn mean_loudness(&self) -> f64 {
        self.bats.iter().map(|b| b.loudness).sum::<f64>() / self.bats.len() as f64
    }
}

// Like `uniform_in`, but a zero-width range is allowed and still consumes a draw.
fn draw_in(stream: &mut RandomStream, [lo, hi]: [f64; 2]) -> Result<f64> {
    if lo == hi && lo.is_finite() {
        stream.uniform01();
        return Ok(lo);
    }
    stream.uniform_in(lo, hi)
}

/// Random initial swarm under the default (feasibility-first) ranking.
/// Every bat is evaluated once.
pub fn init_swarm(problem: &Problem, config: &SwarmConfig, stream: &mut RandomStream) -> Result<SwarmState> {
    init_swarm_with(problem, config, &ConstraintHandler::default(), stream)
}

/// Random initial swarm whose global best is picked under `handler`.
pub fn init_swarm_with(
    problem: &Problem,
    config: &SwarmConfig,
    handler: &ConstraintHandler,
    stream: &mut RandomStream,
) -> Result<SwarmState> {
    config.validate()?;
    let d = problem.dimension();
    let mut bats = Vec::with_capacity(config.n_bats);
    for _ in 0..config.n_bats {
        let mut position = Vec::with_capacity(d);
        for k in 0..d {
            position.push(draw_in(stream, [problem.lower()[k], problem.upper()[k]])?);
        }
        problem.repair(&mut position);
        let frequency = draw_frequency(config, stream.uniform01());
        let loudness = draw_in(stream, config.loudness_init_range)?;
        let initial_pulse_rate = draw_in(stream, config.pulse_init_range)?;
        let pulse_rate = match config.pulse_schedule {
            PulseSchedule::Constant => initial_pulse_rate,
            _ => 0.0,
        };
        let best_eval = problem.evaluate(&position)?;
        bats.push(Bat {
            position,
            velocity: vec![0.0; d],
            frequency,
            loudness,
            pulse_rate,
            initial_pulse_rate,
            acceptances: 0,
            best_eval,
        });
    }
    Ok(SwarmState {
        global_best: best_of(&bats, handler).clone(),
        evaluation_count: bats.len(),
        bats,
        iteration: 0,
        local_walks: 0,
    })
}

fn best_of<'a>(bats: &'a [Bat], handler: &ConstraintHandler) -> &'a EvaluatedPoint {
    bats.iter()
        .map(|b| &b.best_eval)
        .reduce(|best, e| if handler.is_better(e, best) { e } else { best })
        .expect("swarm is non-empty")
}

/// `f_min + (f_max - f_min) * beta`.
pub fn draw_frequency(config: &SwarmConfig, beta: f64) -> f64 {
    config.f_min + (config.f_max - config.f_min) * beta
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

/// `v_prev + (x - x_star) * f`, componentwise.
pub fn update_velocity(v_prev: &[f64], x: &[f64], x_star: &[f64], f: f64) -> Result<Vec<f64>> {
    check_len(v_prev.len(), x.len())?;
    check_len(v_prev.len(), x_star.len())?;
    Ok(v_prev
        .iter()
        .zip(x.iter().zip(x_star))
        .map(|(v, (xi, xs))| v + (xi - xs) * f)
        .collect())
}

/// `x_prev + v`, componentwise. Bound repair is the caller's job.
pub fn update_position(x_prev: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    check_len(x_prev.len(), v.len())?;
    Ok(x_prev.iter().zip(v).map(|(x, v)| x + v).collect())
}

/// `x_base + eps * mean_loudness` with one `eps ~ U[-1, 1)` per coordinate.
///
/// A zero mean loudness returns `x_base` unchanged (the draws are still
/// consumed so the stream order does not depend on the loudness values).
pub fn local_walk(x_base: &[f64], mean_loudness: f64, stream: &mut RandomStream) -> Result<Vec<f64>> {
    local_walk_scaled(x_base, mean_loudness, None, stream)
}

fn local_walk_scaled(
    x_base: &[f64],
    mean_loudness: f64,
    widths: Option<&[f64]>,
    stream: &mut RandomStream,
) -> Result<Vec<f64>> {
    if !(mean_loudness >= 0.0 && mean_loudness.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "mean loudness must be non-negative and finite, got {mean_loudness}"
        )));
    }
    Ok(x_base
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let eps = 2.0 * stream.uniform01() - 1.0;
            let unit = widths.map_or(1.0, |w| w[k]);
            x + eps * mean_loudness * unit
        })
        .collect())
}

/// `alpha * a`.
pub fn update_loudness(a: f64, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    Ok(alpha * a)
}

/// `r0 * (1 - exp(-gamma * t))`.
pub fn update_pulse_rate(r0: f64, gamma: f64, t: usize) -> Result<f64> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidConfig(format!("gamma must be positive, got {gamma}")));
    }
    Ok(r0 * (1.0 - (-gamma * t as f64).exp()))
}

/// One iteration over the whole swarm.
pub fn step(
    state: &mut SwarmState,
    problem: &Problem,
    config: &SwarmConfig,
    handler: &ConstraintHandler,
    stream: &mut RandomStream,
) -> Result<()> {
    let mean_loudness = state.mean_loudness();
    let widths: Option<Vec<f64>> = match config.walk_scale {
        WalkScale::Absolute => None,
        WalkScale::BoxWidth(fraction) => Some(
            problem
                .lower()
                .iter()
                .zip(problem.upper())
                .map(|(lo, hi)| fraction * (hi - lo))
                .collect(),
        ),
    };
    let iteration = state.iteration + 1;

    for bat in state.bats.iter_mut() {
        bat.frequency = draw_frequency(config, stream.uniform01());
        bat.velocity = update_velocity(&bat.velocity, &bat.position, &state.global_best.position, bat.frequency)?;
        let mut candidate = update_position(&bat.position, &bat.velocity)?;
        problem.repair(&mut candidate);

        if stream.uniform01() > bat.pulse_rate {
            candidate = local_walk_scaled(&state.global_best.position, mean_loudness, widths.as_deref(), stream)?;
            problem.repair(&mut candidate);
            state.local_walks += 1;
        }

        let evaluated = problem.evaluate(&candidate)?;
        state.evaluation_count += 1;

        let gate_open = stream.uniform01() < bat.loudness || !config.loudness_gate;
        if gate_open && handler.is_better(&evaluated, &bat.best_eval) {
            bat.position = candidate;
            bat.best_eval = evaluated.clone();
            bat.acceptances += 1;
            if config.loudness_schedule == LoudnessSchedule::Geometric {
                bat.loudness = update_loudness(bat.loudness, config.alpha)?;
            }
            bat.pulse_rate = match config.pulse_schedule {
                PulseSchedule::AcceptanceCount => {
                    update_pulse_rate(bat.initial_pulse_rate, config.gamma, bat.acceptances)?
                }
                PulseSchedule::GlobalIteration => update_pulse_rate(bat.initial_pulse_rate, config.gamma, iteration)?,
                PulseSchedule::Constant => bat.initial_pulse_rate,
            };
        }

        if handler.is_better(&evaluated, &state.global_best) {
            state.global_best = evaluated;
        }
    }
    state.iteration = iteration;
    Ok(())
}

/// Initialize and iterate `max_iterations` times from `config.seed`.
pub fn run(problem: &Problem, config: &SwarmConfig, handler: &ConstraintHandler) -> Result<OptimizationResult> {
    handler.validate()?;
    let mut stream = RandomStream::new(config.seed);
    let mut state = init_swarm_with(problem, config, handler, &mut stream)?;
    let mut trace = Vec::with_capacity(config.max_iterations + 1);
    trace.push(state.global_best.clone());
    for _ in 0..config.max_iterations {
        step(&mut state, problem, config, handler, &mut stream)?;
        trace.push(state.global_best.clone());
    }
    Ok(OptimizationResult {
        best: state.global_best,
        evaluations: state.evaluation_count,
        iterations: state.iteration,
        trace,
    })
}
