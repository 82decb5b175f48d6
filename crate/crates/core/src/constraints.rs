//! Constraint handling: violation accounting, the comparison rule between
//! evaluated points, and the bound/discrete repair operators.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{ConstraintSpec, Problem};

/// A candidate together with everything needed to rank it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedPoint {
    pub position: Vec<f64>,
    pub objective: f64,
    /// Raw constraint function values, one per [`ConstraintSpec`].
    pub constraints: Vec<f64>,
    /// One entry per one-sided constraint, each `max(0, g)`.
    pub violations: Vec<f64>,
    pub total_violation: f64,
}

impl EvaluatedPoint {
    pub fn new(position: Vec<f64>, objective: f64, constraints: Vec<f64>, violations: Vec<f64>) -> Self {
        let total_violation = violations.iter().sum();
        Self {
            position,
            objective,
            constraints,
            violations,
            total_violation,
        }
    }

    /// Every violation entry is at most `tolerance`.
    pub fn is_feasible(&self, tolerance: f64) -> bool {
        self.violations.iter().all(|v| *v <= tolerance)
    }

    pub fn max_violation(&self) -> f64 {
        self.violations.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum HandlerMode {
    /// Feasible beats infeasible; feasibles by objective; infeasibles by
    /// total violation, then objective.
    FeasibilityFirst,
    /// Rank by `objective + coefficient * total_violation`.
    StaticPenalty { coefficient: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintHandler {
    pub mode: HandlerMode,
    /// Largest violation entry still classified feasible.
    pub tolerance: f64,
}

impl Default for ConstraintHandler {
    fn default() -> Self {
        Self::feasibility_first()
    }
}

impl ConstraintHandler {
    pub const DEFAULT_TOLERANCE: f64 = 1e-9;

    pub fn feasibility_first() -> Self {
        Self {
            mode: HandlerMode::FeasibilityFirst,
            tolerance: Self::DEFAULT_TOLERANCE,
        }
    }

    pub fn static_penalty(coefficient: f64) -> Result<Self> {
        if !(coefficient.is_finite() && coefficient > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "penalty coefficient must be positive and finite, got {coefficient}"
            )));
        }
        Ok(Self {
            mode: HandlerMode::StaticPenalty { coefficient },
            tolerance: Self::DEFAULT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance >= 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be >= 0, got {}",
                self.tolerance
            )));
        }
        if let HandlerMode::StaticPenalty { coefficient } = self.mode {
            Self::static_penalty(coefficient)?;
        }
        Ok(())
    }

    pub fn compare(&self, a: &EvaluatedPoint, b: &EvaluatedPoint) -> Ordering {
        compare(a, b, self)
    }

    /// `a` strictly better than `b`.
    pub fn is_better(&self, a: &EvaluatedPoint, b: &EvaluatedPoint) -> bool {
        compare(a, b, self) == Ordering::Less
    }
}

/// Total preorder on evaluated points; `Less` means `a` is better.
pub fn compare(a: &EvaluatedPoint, b: &EvaluatedPoint, handler: &ConstraintHandler) -> Ordering {
    match handler.mode {
        HandlerMode::FeasibilityFirst => {
            let fa = a.is_feasible(handler.tolerance);
            let fb = b.is_feasible(handler.tolerance);
            match (fa, fb) {
                (true, true) => a.objective.total_cmp(&b.objective),
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                (false, false) => a
                    .total_violation
                    .total_cmp(&b.total_violation)
                    .then_with(|| a.objective.total_cmp(&b.objective)),
            }
        }
        HandlerMode::StaticPenalty { coefficient } => {
            let pa = a.objective + coefficient * a.total_violation;
            let pb = b.objective + coefficient * b.total_violation;
            pa.total_cmp(&pb)
        }
    }
}

/// Violation vector of `problem` at `x`: double-sided constraints
/// `L <= g <= U` become `(L - g, g - U)`, each clipped at zero.
pub fn normalize_constraints(problem: &Problem, x: &[f64]) -> Result<Vec<f64>> {
    let raw = problem.evaluate_raw(x)?;
    Ok(violations(problem.constraint_specs(), &raw.constraints))
}

pub(crate) fn violations(specs: &[ConstraintSpec], values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(specs.len() * 2);
    for (spec, g) in specs.iter().zip(values) {
        if let Some(lo) = spec.lower {
            out.push(violation_amount(lo - g));
        }
        if let Some(hi) = spec.upper {
            out.push(violation_amount(g - hi));
        }
    }
    out
}

// NaN constraint values count as infinitely violated.
fn violation_amount(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v.max(0.0)
    }
}

pub(crate) fn validate_bounds(lo: &[f64], hi: &[f64]) -> Result<()> {
    if lo.len() != hi.len() {
        return Err(Error::LengthMismatch {
            expected: lo.len(),
            actual: hi.len(),
        });
    }
    for (index, (l, h)) in lo.iter().zip(hi).enumerate() {
        if !(l.is_finite() && h.is_finite()) || l > h {
            return Err(Error::MalformedBounds {
                index,
                lower: *l,
                upper: *h,
            });
        }
    }
    Ok(())
}

/// Componentwise `median(lo, x, hi)`.
pub fn clamp_to_bounds(x: &[f64], lo: &[f64], hi: &[f64]) -> Result<Vec<f64>> {
    validate_bounds(lo, hi)?;
    if x.len() != lo.len() {
        return Err(Error::LengthMismatch {
            expected: lo.len(),
            actual: x.len(),
        });
    }
    Ok(x.iter()
        .zip(lo.iter().zip(hi))
        .map(|(v, (l, h))| v.clamp(*l, *h))
        .collect())
}

/// Replace each coordinate that has a value set by its nearest member, ties
/// going to the smaller value.
pub fn snap_discrete(x: &[f64], discrete_sets: &[Option<Vec<f64>>]) -> Result<Vec<f64>> {
    if x.len() != discrete_sets.len() {
        return Err(Error::LengthMismatch {
            expected: discrete_sets.len(),
            actual: x.len(),
        });
    }
    x.iter()
        .zip(discrete_sets)
        .enumerate()
        .map(|(i, (v, set))| match set {
            None => Ok(*v),
            Some(values) if values.is_empty() => Err(Error::EmptyDiscreteSet(i)),
            Some(values) => Ok(nearest_in_set(*v, values)),
        })
        .collect()
}

pub(crate) fn nearest_in_set(v: f64, values: &[f64]) -> f64 {
    let mut best = values[0];
    let mut best_dist = (v - best).abs();
    for &candidate in &values[1..] {
        let dist = (v - candidate).abs();
        // Distances that differ only by rounding (a decimal midpoint such as
        // 0.2685 between 0.192 and 0.345) are ties.
        let scale = v.abs().max(candidate.abs()).max(best.abs()).max(1e-300);
        let tie = (dist - best_dist).abs() <= 8.0 * f64::EPSILON * scale;
        if tie {
            if candidate < best {
                best = candidate;
                best_dist = dist;
            }
        } else if dist < best_dist {
            best = candidate;
            best_dist = dist;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn point(objective: f64, violations: Vec<f64>) -> EvaluatedPoint {
        EvaluatedPoint::new(vec![], objective, vec![], violations)
    }

    #[test]
    fn feasible_beats_infeasible() {
        let h = ConstraintHandler::feasibility_first();
        let a = point(10.0, vec![0.0]);
        let b = point(-100.0, vec![1.0]);
        assert_eq!(compare(&a, &b, &h), Ordering::Less);
        assert_eq!(compare(&b, &a, &h), Ordering::Greater);
    }

    #[test]
    fn feasibles_by_objective() {
        let h = ConstraintHandler::feasibility_first();
        assert!(h.is_better(&point(1.0, vec![0.0]), &point(2.0, vec![0.0])));
    }

    #[test]
    fn infeasibles_by_violation_then_objective() {
        let h = ConstraintHandler::feasibility_first();
        assert!(h.is_better(&point(5.0, vec![0.1]), &point(1.0, vec![0.2])));
        assert!(h.is_better(&point(1.0, vec![0.2]), &point(5.0, vec![0.2])));
    }

    #[test]
    fn tolerance_classifies_tiny_violation_feasible() {
        let h = ConstraintHandler::feasibility_first();
        assert!(point(0.0, vec![5e-10]).is_feasible(h.tolerance));
        assert!(!point(0.0, vec![2e-9]).is_feasible(h.tolerance));
    }

    #[test]
    fn penalty_mode() {
        let h = ConstraintHandler::static_penalty(1e6).unwrap();
        assert!(h.is_better(&point(100.0, vec![0.0]), &point(0.0, vec![1.0])));
        assert!(ConstraintHandler::static_penalty(0.0).is_err());
        assert!(ConstraintHandler::static_penalty(f64::NAN).is_err());
    }

    #[test]
    fn clamp_cases() {
        let lo = [78.0, 33.0];
        let hi = [102.0, 45.0];
        assert_eq!(clamp_to_bounds(&[80.0, 40.0], &lo, &hi).unwrap(), vec![80.0, 40.0]);
        assert_eq!(clamp_to_bounds(&[200.0, 40.0], &lo, &hi).unwrap(), vec![102.0, 40.0]);
        assert!(clamp_to_bounds(&[1.0, 1.0], &[1.0, 2.0], &[0.0, 3.0]).is_err());
        assert!(clamp_to_bounds(&[1.0], &lo, &hi).is_err());
    }

    #[test]
    fn snap_cases() {
        let sets = vec![None, Some(vec![0.192, 0.345])];
        assert_eq!(snap_discrete(&[7.0, 0.2], &sets).unwrap(), vec![7.0, 0.192]);
        assert_eq!(snap_discrete(&[7.0, 0.2685], &sets).unwrap(), vec![7.0, 0.192]);
        assert_eq!(snap_discrete(&[7.0, 0.3], &sets).unwrap(), vec![7.0, 0.345]);
        assert!(matches!(
            snap_discrete(&[1.0], &[Some(vec![])]),
            Err(Error::EmptyDiscreteSet(0))
        ));
    }

    #[test]
    fn violation_expansion() {
        let specs = vec![
            ConstraintSpec::between("g2", 90.0, 110.0),
            ConstraintSpec::at_most("g", 0.0),
        ];
        assert_eq!(violations(&specs, &[89.0, 0.0]), vec![1.0, 0.0, 0.0]);
        assert_eq!(violations(&specs, &[110.0, -3.0]), vec![0.0, 0.0, 0.0]);
        assert_eq!(violations(&specs, &[100.0, 2.0]), vec![0.0, 0.0, 2.0]);
    }

    fn arb_point() -> impl Strategy<Value = EvaluatedPoint> {
        (
            -10.0f64..10.0,
            prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], 2),
        )
            .prop_map(|(f, v)| point(f, v))
    }

    fn arb_handler() -> impl Strategy<Value = ConstraintHandler> {
        prop_oneof![
            Just(ConstraintHandler::feasibility_first()),
            (0.1f64..1e3).prop_map(|c| ConstraintHandler::static_penalty(c).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn compare_is_total_preorder(a in arb_point(), b in arb_point(), c in arb_point(), h in arb_handler()) {
            let ab = compare(&a, &b, &h);
            prop_assert_eq!(ab, compare(&b, &a, &h).reverse());
            prop_assert_eq!(compare(&a, &a, &h), Ordering::Equal);
            let bc = compare(&b, &c, &h);
            if ab != Ordering::Greater && bc != Ordering::Greater {
                prop_assert_ne!(compare(&a, &c, &h), Ordering::Greater);
            }
        }

        #[test]
        fn clamp_idempotent_and_contained(x in prop::collection::vec(-1e3f64..1e3, 4),
                                          lo in prop::collection::vec(-10.0f64..0.0, 4),
                                          w in prop::collection::vec(0.0f64..20.0, 4)) {
            let hi: Vec<f64> = lo.iter().zip(&w).map(|(l, w)| l + w).collect();
            let once = clamp_to_bounds(&x, &lo, &hi).unwrap();
            let twice = clamp_to_bounds(&once, &lo, &hi).unwrap();
            prop_assert_eq!(&once, &twice);
            for k in 0..4 {
                prop_assert!(once[k] >= lo[k] && once[k] <= hi[k]);
            }
        }

        #[test]
        fn snap_is_projection(x in prop::collection::vec(-1.0f64..2.0, 3)) {
            let sets = vec![Some(vec![0.192, 0.345]), None, Some(vec![-0.5, 0.0, 1.5])];
            let once = snap_discrete(&x, &sets).unwrap();
            prop_assert!([0.192, 0.345].contains(&once[0]));
            prop_assert_eq!(once[1], x[1]);
            prop_assert!([-0.5, 0.0, 1.5].contains(&once[2]));
            prop_assert_eq!(snap_discrete(&once, &sets).unwrap(), once);
        }
    }
}
