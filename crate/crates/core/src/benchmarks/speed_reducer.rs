use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::{ConstraintSpec, KnownBest, Problem, Provenance, RawEvaluation};

/// Which constraint set to use for the speed reducer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedReducerVariant {
    /// All eleven constraints.
    #[default]
    Standard,
    /// The first nine only, without the two shaft-length design rules.
    NineConstraint,
}

/// Gearbox weight minimization.
///
/// Variables: face width, tooth module, pinion teeth, shaft lengths `l1`, `l2`,
/// shaft diameters `d1`, `d2`.
pub fn speed_reducer() -> Result<Problem> {
    speed_reducer_variant(SpeedReducerVariant::Standard)
}

pub fn speed_reducer_variant(variant: SpeedReducerVariant) -> Result<Problem> {
    let (name, count) = match variant {
        SpeedReducerVariant::Standard => ("speed_reducer", 11),
        SpeedReducerVariant::NineConstraint => ("speed_reducer_9", 9),
    };
    Problem::builder(
        name,
        vec![2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0],
        vec![3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5],
    )
    .constraints((1..=count).map(|k| ConstraintSpec::at_most(format!("g{k}"), 0.0)))
    .known_best(KnownBest {
        position: Some(vec![3.5, 0.7, 17.0, 7.3, 7.715_319_9, 3.350_214_7, 5.286_654_5]),
        objective: 2_994.341_3,
        provenance: Provenance::Literature,
        note: "standard eleven-constraint optimum".into(),
    })
    .build(move |x: &[f64]| {
        let mut constraints = golinski_constraints(x);
        constraints.truncate(count);
        Ok(RawEvaluation {
            objective: weight(x),
            constraints,
        })
    })
}

// 0.7854 is the published coefficient, not pi/4 to full precision.
#[allow(clippy::approx_constant)]
fn weight(x: &[f64]) -> f64 {
    let [x1, x2, x3, x4, x5, x6, x7] = [x[0], x[1], x[2], x[3], x[4], x[5], x[6]];
    0.7854 * x1 * x2 * x2 * (3.3333 * x3 * x3 + 14.9334 * x3 - 43.0934) - 1.508 * x1 * (x6 * x6 + x7 * x7)
        + 7.477 * (x6.powi(3) + x7.powi(3))
        + 0.7854 * (x4 * x6 * x6 + x5 * x7 * x7)
}

fn golinski_constraints(x: &[f64]) -> Vec<f64> {
    let [x1, x2, x3, x4, x5, x6, x7] = [x[0], x[1], x[2], x[3], x[4], x[5], x[6]];
    vec![
        27.0 / (x1 * x2 * x2 * x3) - 1.0,
        397.5 / (x1 * x2 * x2 * x3 * x3) - 1.0,
        1.93 * x4.powi(3) / (x2 * x3 * x6.powi(4)) - 1.0,
        1.93 * x5.powi(3) / (x2 * x3 * x7.powi(4)) - 1.0,
        ((745.0 * x4 / (x2 * x3)).powi(2) + 16.9e6).sqrt() / (110.0 * x6.powi(3)) - 1.0,
        ((745.0 * x5 / (x2 * x3)).powi(2) + 157.5e6).sqrt() / (85.0 * x7.powi(3)) - 1.0,
        x2 * x3 / 40.0 - 1.0,
        5.0 * x2 / x1 - 1.0,
        x1 / (12.0 * x2) - 1.0,
        (1.5 * x6 + 1.9) / x4 - 1.0,
        (1.1 * x7 + 1.9) / x5 - 1.0,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn weight_spot_values() {
        let p = speed_reducer().unwrap();
        let e = p.evaluate(&[3.5, 0.7, 17.0, 7.3, 7.3, 3.35, 5.29]).unwrap();
        assert_abs_diff_eq!(e.objective, 2_987.284_781_574_1, epsilon = 1e-6);
        assert_abs_diff_eq!(e.constraints[6], -0.7025, epsilon = 1e-12);
    }

    #[test]
    fn literature_optimum_feasible() {
        let p = speed_reducer().unwrap();
        let best = p.known_best().unwrap();
        let e = p.evaluate(best.position.as_ref().unwrap()).unwrap();
        assert_abs_diff_eq!(e.objective, 2_994.341_315_661_534, epsilon = 1e-3);
        assert!(e.is_feasible(1e-6), "{:?}", e.constraints);
    }

    #[test]
    fn tooth_product_bound_inactive_in_box() {
        // x2 * x3 <= 0.8 * 28 = 22.4 inside the box.
        let p = speed_reducer().unwrap();
        let e = p.evaluate(&[3.5, 0.8, 28.0, 7.3, 7.8, 3.4, 5.3]).unwrap();
        assert_abs_diff_eq!(e.constraints[6], -0.44, epsilon = 1e-12);
    }

    #[test]
    fn nine_constraint_variant() {
        let p = speed_reducer_variant(SpeedReducerVariant::NineConstraint).unwrap();
        assert_eq!(p.name(), "speed_reducer_9");
        let e = p.evaluate(&[3.5, 0.7, 17.0, 7.3, 7.3, 3.35, 5.29]).unwrap();
        assert_eq!(e.constraints.len(), 9);
    }
}
