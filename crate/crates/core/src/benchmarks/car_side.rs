//! Vehicle side-impact crashworthiness design.
//!
//! Weight and the ten crash responses are the response-surface polynomials
//! commonly used for this benchmark. Variables, in order: thicknesses of the
//! B-pillar inner, B-pillar reinforcement, floor side inner, cross members,
//! door beam, door beltline reinforcement and roof rail; materials of the
//! B-pillar inner and floor side inner (discrete); barrier height; hitting
//! position.

use crate::error::Result;
use crate::problem::{ConstraintSpec, Problem, RawEvaluation};

pub const MATERIAL_SET: [f64; 2] = [0.192, 0.345];

const LIMITS: [(&str, f64); 10] = [
    ("abdomen_load_kN", 1.0),
    ("upper_chest_viscous_m_per_s", 0.32),
    ("middle_chest_viscous_m_per_s", 0.32),
    ("lower_chest_viscous_m_per_s", 0.32),
    ("upper_rib_deflection_mm", 32.0),
    ("middle_rib_deflection_mm", 32.0),
    ("lower_rib_deflection_mm", 32.0),
    ("pubic_force_kN", 4.0),
    ("b_pillar_velocity_mm_per_ms", 9.9),
    ("front_door_velocity_mm_per_ms", 15.7),
];

pub fn car_side_impact() -> Result<Problem> {
    let lower = vec![0.5, 0.45, 0.5, 0.5, 0.875, 0.4, 0.4, 0.192, 0.192, 0.5, 0.5];
    let upper = vec![1.5, 1.35, 1.5, 1.5, 2.625, 1.2, 1.2, 0.345, 0.345, 1.5, 1.5];
    Problem::builder("car_side_impact", lower, upper)
        .constraints(
            LIMITS
                .iter()
                .map(|(name, limit)| ConstraintSpec::at_most(*name, *limit)),
        )
        .discrete(7, MATERIAL_SET.to_vec())
        .discrete(8, MATERIAL_SET.to_vec())
        .build(|x: &[f64]| {
            Ok(RawEvaluation {
                objective: weight(x),
                constraints: responses(x).to_vec(),
            })
        })
}

fn weight(x: &[f64]) -> f64 {
    1.98 + 4.90 * x[0] + 6.67 * x[1] + 6.98 * x[2] + 4.01 * x[3] + 1.78 * x[4] + 2.73 * x[6]
}

fn responses(x: &[f64]) -> [f64; 10] {
    let [x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11] =
        [x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7], x[8], x[9], x[10]];
    let abdomen = 1.16 - 0.3717 * x2 * x4 - 0.00931 * x2 * x10 - 0.484 * x3 * x9 + 0.01343 * x6 * x10;
    let upper_chest = 0.261 - 0.0159 * x1 * x2 - 0.188 * x1 * x8 - 0.019 * x2 * x7
        + 0.0144 * x3 * x5
        + 0.000_875_7 * x5 * x10
        + 0.080_45 * x6 * x9
        + 0.001_39 * x8 * x11
        + 0.000_015_75 * x10 * x11;
    let middle_chest = 0.214 + 0.00817 * x5 - 0.131 * x1 * x8 - 0.0704 * x1 * x9 + 0.03099 * x2 * x6 - 0.018 * x2 * x7
        + 0.0208 * x3 * x8
        + 0.121 * x3 * x9
        - 0.00364 * x5 * x6
        + 0.000_771_5 * x5 * x10
        - 0.000_535_4 * x6 * x10
        + 0.00121 * x8 * x11
        + 0.00184 * x9 * x10
        - 0.018 * x2 * x2;
    let lower_chest = 0.74 - 0.61 * x2 - 0.163 * x3 * x8 + 0.001_232 * x3 * x10 - 0.166 * x7 * x9 + 0.227 * x2 * x2;
    let upper_rib =
        28.98 + 3.818 * x3 - 4.2 * x1 * x2 + 0.0207 * x5 * x10 + 6.63 * x6 * x9 - 7.7 * x7 * x8 + 0.32 * x9 * x10;
    let middle_rib =
        33.86 + 2.95 * x3 + 0.1792 * x10 - 5.057 * x1 * x2 - 11.0 * x2 * x8 - 0.0215 * x5 * x10 - 9.98 * x7 * x8
            + 22.0 * x8 * x9;
    let lower_rib = 46.36 - 9.9 * x2 - 12.9 * x1 * x8 + 0.1107 * x3 * x10;
    let pubic = 4.72 - 0.5 * x4 - 0.19 * x2 * x3 - 0.0122 * x4 * x10 + 0.009_325 * x6 * x10 + 0.000_191 * x11 * x11;
    let b_pillar = 10.58 - 0.674 * x1 * x2 - 1.95 * x2 * x8 + 0.02054 * x3 * x10 - 0.0198 * x4 * x10 + 0.028 * x6 * x10;
    let front_door =
        16.45 - 0.489 * x3 * x7 - 0.843 * x5 * x6 + 0.0432 * x9 * x10 - 0.0556 * x9 * x11 - 0.000_786 * x11 * x11;
    [
        abdomen,
        upper_chest,
        middle_chest,
        lower_chest,
        upper_rib,
        middle_rib,
        lower_rib,
        pubic,
        b_pillar,
        front_door,
    ]
}
