//! The optimization target shared by every algorithm in the crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constraints::{self, EvaluatedPoint};
use crate::error::{Error, Result};

/// Objective value plus the raw constraint function values, in the order of
/// [`Problem::constraint_specs`].
#[derive(Clone, Debug, PartialEq)]
pub struct RawEvaluation {
    pub objective: f64,
    pub constraints: Vec<f64>,
}

/// Anything that can evaluate a candidate vector.
pub trait Model: Send + Sync {
    fn evaluate(&self, x: &[f64]) -> Result<RawEvaluation>;
}

impl<F> Model for F
where
    F: Fn(&[f64]) -> Result<RawEvaluation> + Send + Sync,
{
    fn evaluate(&self, x: &[f64]) -> Result<RawEvaluation> {
        self(x)
    }
}

/// Limits on one raw constraint value: `lower <= g(x) <= upper`.
///
/// A constraint in the usual `g(x) <= 0` form has `upper = Some(0.0)` and no
/// lower limit. Double-sided constraints expand into two one-sided entries
/// when violations are computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub name: String,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
}

impl ConstraintSpec {
    /// `g(x) <= limit`.
    pub fn at_most(name: impl Into<String>, limit: f64) -> Self {
        Self {
            name: name.into(),
            lower: None,
            upper: Some(limit),
        }
    }

    /// `lower <= g(x) <= upper`.
    pub fn between(name: impl Into<String>, lower: f64, upper: f64) -> Self {
        Self {
            name: name.into(),
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn one_sided_count(&self) -> usize {
        usize::from(self.lower.is_some()) + usize::from(self.upper.is_some())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Value printed in the source text of the benchmark.
    Published,
    /// Best value reported elsewhere in the literature.
    Literature,
    /// Computed by an independent reference solver.
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnownBest {
    pub position: Option<Vec<f64>>,
    pub objective: f64,
    pub provenance: Provenance,
    pub note: String,
}

/// Immutable problem definition: bounds, optional discrete value sets,
/// constraint limits and the model that evaluates them.
#[derive(Clone)]
pub struct Problem {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    discrete: Vec<Option<Vec<f64>>>,
    constraints: Vec<ConstraintSpec>,
    model: Arc<dyn Model>,
    known_best: Option<KnownBest>,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dimension", &self.dimension())
            .field("constraints", &self.constraints.len())
            .finish_non_exhaustive()
    }
}

pub struct ProblemBuilder {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    discrete: Vec<Option<Vec<f64>>>,
    constraints: Vec<ConstraintSpec>,
    known_best: Option<KnownBest>,
}

impl ProblemBuilder {
    pub fn constraint(mut self, spec: ConstraintSpec) -> Self {
        self.constraints.push(spec);
        self
    }

    pub fn constraints(mut self, specs: impl IntoIterator<Item = ConstraintSpec>) -> Self {
        self.constraints.extend(specs);
        self
    }

    /// Restrict coordinate `index` to a finite set of values.
    pub fn discrete(mut self, index: usize, values: Vec<f64>) -> Self {
        if self.discrete.len() <= index {
            self.discrete.resize(index + 1, None);
        }
        self.discrete[index] = Some(values);
        self
    }

    pub fn known_best(mut self, best: KnownBest) -> Self {
        self.known_best = Some(best);
        self
    }

    pub fn build(self, model: impl Model + 'static) -> Result<Problem> {
        self.build_shared(Arc::new(model))
    }

    pub fn build_shared(mut self, model: Arc<dyn Model>) -> Result<Problem> {
        let d = self.lower.len();
        if d == 0 {
            return Err(Error::InvalidProblem(format!(
                "{}: dimension must be at least 1",
                self.name
            )));
        }
        if self.upper.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                actual: self.upper.len(),
            });
        }
        constraints::validate_bounds(&self.lower, &self.upper)?;
        if self.discrete.len() > d {
            return Err(Error::InvalidProblem(format!(
                "{}: discrete set given for coordinate {} of a {d}-dimensional problem",
                self.name,
                self.discrete.len() - 1
            )));
        }
        self.discrete.resize(d, None);
        for (i, set) in self.discrete.iter_mut().enumerate() {
            if let Some(values) = set {
                if values.is_empty() {
                    return Err(Error::EmptyDiscreteSet(i));
                }
                values.sort_by(f64::total_cmp);
            }
        }
        for spec in &self.constraints {
            if spec.one_sided_count() == 0 {
                return Err(Error::InvalidProblem(format!(
                    "constraint {} has neither a lower nor an upper limit",
                    spec.name
                )));
            }
            if let (Some(lo), Some(hi)) = (spec.lower, spec.upper) {
                if lo > hi {
                    return Err(Error::InvalidProblem(format!(
                        "constraint {} has lower limit {lo} above upper limit {hi}",
                        spec.name
                    )));
                }
            }
        }
        if let Some(best) = &self.known_best {
            if let Some(p) = &best.position {
                if p.len() != d {
                    return Err(Error::LengthMismatch {
                        expected: d,
                        actual: p.len(),
                    });
                }
            }
        }
        Ok(Problem {
            name: self.name,
            lower: self.lower,
            upper: self.upper,
            discrete: self.discrete,
            constraints: self.constraints,
            model,
            known_best: self.known_best,
        })
    }
}

impl Problem {
    pub fn builder(name: impl Into<String>, lower: Vec<f64>, upper: Vec<f64>) -> ProblemBuilder {
        ProblemBuilder {
            name: name.into(),
            lower,
            upper,
            discrete: Vec::new(),
            constraints: Vec::new(),
            known_best: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn discrete_sets(&self) -> &[Option<Vec<f64>>] {
        &self.discrete
    }

    pub fn constraint_specs(&self) -> &[ConstraintSpec] {
        &self.constraints
    }

    /// Number of entries in the violation vector after double-sided expansion.
    pub fn one_sided_constraint_count(&self) -> usize {
        self.constraints.iter().map(ConstraintSpec::one_sided_count).sum()
    }

    pub fn known_best(&self) -> Option<&KnownBest> {
        self.known_best.as_ref()
    }

    /// Raw model output, checked for shape.
    pub fn evaluate_raw(&self, x: &[f64]) -> Result<RawEvaluation> {
        if x.len() != self.dimension() {
            return Err(Error::LengthMismatch {
                expected: self.dimension(),
                actual: x.len(),
            });
        }
        let raw = self.model.evaluate(x)?;
        if raw.constraints.len() != self.constraints.len() {
            return Err(Error::Evaluation(format!(
                "{}: model returned {} constraint values, expected {}",
                self.name,
                raw.constraints.len(),
                self.constraints.len()
            )));
        }
        Ok(raw)
    }

    /// Evaluate `x` as given (no repair) into an [`EvaluatedPoint`].
    pub fn evaluate(&self, x: &[f64]) -> Result<EvaluatedPoint> {
        let raw = self.evaluate_raw(x)?;
        let violations = constraints::violations(&self.constraints, &raw.constraints);
        Ok(EvaluatedPoint::new(
            x.to_vec(),
            raw.objective,
            raw.constraints,
            violations,
        ))
    }

    /// Clamp to the box, then snap discrete coordinates.
    pub fn repair(&self, x: &mut [f64]) {
        for (k, v) in x.iter_mut().enumerate() {
            *v = v.clamp(self.lower[k], self.upper[k]);
            if let Some(set) = &self.discrete[k] {
                *v = constraints::nearest_in_set(*v, set);
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dimension()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *v >= *lo && *v <= *hi)
    }

    pub fn describe(&self) -> ProblemDescription {
        ProblemDescription {
            name: self.name.clone(),
            dimension: self.dimension(),
            lower: self.lower.clone(),
            upper: self.upper.clone(),
            discrete_sets: self
                .discrete
                .iter()
                .enumerate()
                .filter_map(|(i, s)| {
                    s.as_ref().map(|v| DiscreteSet {
                        coordinate: i + 1,
                        values: v.clone(),
                    })
                })
                .collect(),
            constraints: self.constraints.clone(),
            one_sided_constraints: self.one_sided_constraint_count(),
            known_best: self.known_best.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiscreteSet {
    /// 1-based coordinate index.
    pub coordinate: usize,
    pub values: Vec<f64>,
}

/// Structured dump of a problem definition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemDescription {
    pub name: String,
    pub dimension: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub discrete_sets: Vec<DiscreteSet>,
    pub constraints: Vec<ConstraintSpec>,
    pub one_sided_constraints: usize,
    pub known_best: Option<KnownBest>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> Result<Problem> {
        Problem::builder("toy", vec![0.0, 0.0], vec![1.0, 2.0])
            .constraint(ConstraintSpec::at_most("sum", 1.0))
            .constraint(ConstraintSpec::between("diff", -0.5, 0.5))
            .discrete(1, vec![1.5, 0.5])
            .build(|x: &[f64]| {
                Ok(RawEvaluation {
                    objective: x[0] + x[1],
                    constraints: vec![x[0] + x[1], x[0] - x[1]],
                })
            })
    }

    #[test]
    fn builder_validates_and_sorts_sets() {
        let p = toy().unwrap();
        assert_eq!(p.dimension(), 2);
        assert_eq!(p.one_sided_constraint_count(), 3);
        assert_eq!(p.discrete_sets()[1].as_deref(), Some(&[0.5, 1.5][..]));
        assert!(p.discrete_sets()[0].is_none());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let model = |_: &[f64]| {
            Ok(RawEvaluation {
                objective: 0.0,
                constraints: vec![],
            })
        };
        assert!(Problem::builder("e", vec![], vec![]).build(model).is_err());
        assert!(Problem::builder("e", vec![1.0], vec![0.0]).build(model).is_err());
        assert!(Problem::builder("e", vec![0.0], vec![1.0, 2.0]).build(model).is_err());
        assert!(matches!(
            Problem::builder("e", vec![0.0], vec![1.0])
                .discrete(0, vec![])
                .build(model),
            Err(Error::EmptyDiscreteSet(0))
        ));
    }

    #[test]
    fn evaluate_expands_double_sided() {
        let p = toy().unwrap();
        let e = p.evaluate(&[1.0, 0.0]).unwrap();
        // sum = 1 (ok), diff = 1 (> 0.5 by 0.5)
        assert_eq!(e.violations, vec![0.0, 0.0, 0.5]);
        assert_eq!(e.total_violation, 0.5);
        assert!(p.evaluate(&[1.0]).is_err());
    }

    #[test]
    fn repair_clamps_then_snaps() {
        let p = toy().unwrap();
        let mut x = [3.0, 0.9];
        p.repair(&mut x);
        assert_eq!(x, [1.0, 0.5]);
        let mut y = [-1.0, 1.2];
        p.repair(&mut y);
        assert_eq!(y, [0.0, 1.5]);
    }
}
