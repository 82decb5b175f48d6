use std::f64::consts::SQRT_2;

use crate::error::Result;
use crate::problem::{ConstraintSpec, KnownBest, Problem, Provenance, RawEvaluation};

const LENGTH: f64 = 100.0;
const LOAD: f64 = 2.0;
const STRESS: f64 = 2.0;

/// Lower bound on both areas; zero would make the stress terms singular.
pub const TRUSS_MIN_AREA: f64 = 1e-6;

/// Three-bar truss volume subject to member stress limits.
pub fn three_bar_truss() -> Result<Problem> {
    Problem::builder("three_bar_truss", vec![TRUSS_MIN_AREA; 2], vec![1.0; 2])
        .constraints((1..=3).map(|k| ConstraintSpec::at_most(format!("g{k}"), 0.0)))
        .known_best(KnownBest {
            position: Some(vec![0.78863, 0.40838]),
            objective: 263.896_248,
            provenance: Provenance::Published,
            note: "best bat-algorithm design reported for this problem".into(),
        })
        .build(|x: &[f64]| {
            let (x1, x2) = (x[0], x[1]);
            let denom = SQRT_2 * x1 * x1 + 2.0 * x1 * x2;
            Ok(RawEvaluation {
                objective: (2.0 * SQRT_2 * x1 + x2) * LENGTH,
                constraints: vec![
                    (SQRT_2 * x1 + x2) / denom * LOAD - STRESS,
                    x2 / denom * LOAD - STRESS,
                    1.0 / (x1 + SQRT_2 * x2) * LOAD - STRESS,
                ],
            })
        })
}
