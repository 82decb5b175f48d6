use std::path::Path;
use std::sync::Arc;

use nalgebra::DMatrix;

use super::model::{FrameModel, GeometryFile};
use super::solver::solve_strains;
use crate::error::{Error, Result};
use crate::problem::{KnownBest, Problem, Provenance, RawEvaluation};
use crate::rng::RandomStream;

const BENCHMARK_GEOMETRY: &str = include_str!("../../data/frame_benchmark.toml");

/// Recover member inertias from measured gauge strains.
#[derive(Clone, Debug)]
pub struct IdentificationProblem {
    pub model: FrameModel,
    /// Gauges x load cases.
    pub measured: DMatrix<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Inertias the measurements were synthesized from, when known.
    pub true_parameters: Option<Vec<f64>>,
}

impl IdentificationProblem {
    /// Checks shapes and that no measured strain is zero (the objective
    /// divides by every entry).
    pub fn new(
        model: FrameModel,
        measured: DMatrix<f64>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        true_parameters: Option<Vec<f64>>,
    ) -> Result<Self> {
        model.validate()?;
        let shape = (model.gauges.len(), model.load_cases.len());
        if measured.shape() != shape {
            return Err(Error::Geometry(format!(
                "measured strains are {}x{}, expected gauges x load cases = {}x{}",
                measured.nrows(),
                measured.ncols(),
                shape.0,
                shape.1
            )));
        }
        if measured.is_empty() {
            return Err(Error::Geometry("no gauges or no load cases".into()));
        }
        for expected in [lower.len(), upper.len()] {
            if expected != model.parameter_count {
                return Err(Error::LengthMismatch {
                    expected: model.parameter_count,
                    actual: expected,
                });
            }
        }
        if lower.iter().any(|l| l.is_nan() || *l <= 0.0) {
            return Err(Error::Geometry("inertia lower bounds must be positive".into()));
        }
        for g in 0..shape.0 {
            for c in 0..shape.1 {
                if measured[(g, c)] == 0.0 || !measured[(g, c)].is_finite() {
                    return Err(Error::ZeroMeasuredStrain {
                        gauge: g + 1,
                        load_case: c + 1,
                    });
                }
            }
        }
        Ok(Self {
            model,
            measured,
            lower,
            upper,
            true_parameters,
        })
    }

    /// Builds the problem from a geometry file whose `true_inertias` are used
    /// to synthesize the measurements.
    pub fn from_geometry(geometry: &GeometryFile) -> Result<Self> {
        let model = geometry.to_model()?;
        let truth = geometry
            .true_inertias
            .clone()
            .ok_or_else(|| Error::Geometry("geometry file has no true_inertias".into()))?;
        let [lo, hi] = geometry
            .inertia_bounds
            .ok_or_else(|| Error::Geometry("geometry file has no inertia_bounds".into()))?;
        let measured = solve_strains(&model, &truth)?;
        let n = model.parameter_count;
        Self::new(model, measured, vec![lo; n], vec![hi; n], Some(truth))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_geometry(&GeometryFile::from_path(path)?)
    }

    /// Multiplies every measured strain by `1 + sigma * z`, `z` standard normal.
    pub fn with_noise(mut self, relative_sigma: f64, stream: &mut RandomStream) -> Result<Self> {
        if !(relative_sigma >= 0.0 && relative_sigma.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "noise level must be non-negative, got {relative_sigma}"
            )));
        }
        for v in self.measured.iter_mut() {
            *v *= 1.0 + relative_sigma * stream.standard_normal();
        }
        Self::new(self.model, self.measured, self.lower, self.upper, self.true_parameters)
    }

    pub fn measurement_count(&self) -> usize {
        self.measured.len()
    }

    pub fn objective(&self, inertias: &[f64]) -> Result<f64> {
        identification_objective(self, inertias)
    }

    /// Wraps the objective as an unconstrained box-bounded [`Problem`].
    pub fn to_problem(self) -> Result<Problem> {
        let known_best = self.true_parameters.clone().map(|x| KnownBest {
            position: Some(x),
            objective: 0.0,
            provenance: Provenance::Published,
            note: "inertias the measurements were generated from".into(),
        });
        let lower = self.lower.clone();
        let upper = self.upper.clone();
        let shared = Arc::new(self);
        let mut builder = Problem::builder("parameter_identification", lower, upper);
        if let Some(best) = known_best {
            builder = builder.known_best(best);
        }
        builder.build(move |x: &[f64]| {
            Ok(RawEvaluation {
                objective: shared.objective(x)?,
                constraints: Vec::new(),
            })
        })
    }
}

/// Sum over gauges and load cases of `|(measured - analytic) / measured|`.
pub fn identification_objective(problem: &IdentificationProblem, inertias: &[f64]) -> Result<f64> {
    let analytic = solve_strains(&problem.model, inertias)?;
    Ok(problem
        .measured
        .iter()
        .zip(analytic.iter())
        .map(|(m, a)| ((m - a) / m).abs())
        .sum())
}

/// The shipped seven-parameter frame benchmark.
pub fn build_benchmark() -> Result<IdentificationProblem> {
    IdentificationProblem::from_geometry(&GeometryFile::from_toml_str(BENCHMARK_GEOMETRY)?)
}

pub fn benchmark_geometry() -> &'static str {
    BENCHMARK_GEOMETRY
}
