use crate::error::Result;
use crate::problem::{ConstraintSpec, Problem, RawEvaluation};

const LOAD: f64 = 50_000.0;
const MODULUS: f64 = 2e7;
const SEGMENT: f64 = 100.0;
const STRESS_LIMIT: f64 = 14_000.0;
const DEFLECTION_LIMIT: f64 = 2.7;
const ASPECT_LIMIT: f64 = 20.0;

/// Five-step rectangular cantilever, volume minimization.
///
/// `x[0..5]` are the widths and `x[5..10]` the heights of the steps, numbered
/// from the clamped end; the tip load acts at the free end of step 5.
/// Raw constraint values are physical responses (stress in N/cm², tip
/// deflection in cm, height/width ratio) checked against their limits.
pub fn cantilever_beam() -> Result<Problem> {
    let mut lower = vec![1.0; 5];
    lower.extend([30.0; 5]);
    let mut upper = vec![5.0; 5];
    upper.extend([65.0; 5]);
    Problem::builder("cantilever_beam", lower, upper)
        .constraints((1..=5).map(|k| ConstraintSpec::at_most(format!("stress_{k}"), STRESS_LIMIT)))
        .constraint(ConstraintSpec::at_most("tip_deflection", DEFLECTION_LIMIT))
        .constraints((1..=5).map(|k| ConstraintSpec::at_most(format!("aspect_{k}"), ASPECT_LIMIT)))
        .build(|x: &[f64]| {
            let width = &x[0..5];
            let height = &x[5..10];
            let volume: f64 = width.iter().zip(height).map(|(b, h)| b * h * SEGMENT).sum();

            let mut constraints = Vec::with_capacity(11);
            // Bending stress at the root of each step, tip step first: 6 M / (b h^2).
            for (from_tip, step) in (0..5).rev().enumerate() {
                let arm = SEGMENT * (from_tip + 1) as f64;
                constraints.push(6.0 * LOAD * arm / (width[step] * height[step].powi(2)));
            }
            // Tip deflection: coefficient (k^3 - (k-1)^3) for the k-th step from the tip.
            let compliance: f64 = (0..5)
                .rev()
                .enumerate()
                .map(|(from_tip, step)| {
                    let k = (from_tip + 1) as f64;
                    let inertia = width[step] * height[step].powi(3) / 12.0;
                    (k.powi(3) - (k - 1.0).powi(3)) / inertia
                })
                .sum();
            constraints.push(LOAD * SEGMENT.powi(3) / (3.0 * MODULUS) * compliance);
            for step in (0..5).rev() {
                constraints.push(height[step] / width[step]);
            }
            Ok(RawEvaluation {
                objective: volume,
                constraints,
            })
        })
}
