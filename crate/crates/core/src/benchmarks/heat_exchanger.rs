use crate::error::Result;
use crate::problem::{ConstraintSpec, KnownBest, Problem, Provenance, RawEvaluation};

pub const PUBLISHED_BEST: [f64; 8] = [
    579.306_75,
    1_359.970_76,
    5_109.970_52,
    182.017_70,
    295.601_18,
    217.982_30,
    286.416_53,
    395.601_18,
];

/// Heat exchanger network design: minimize `x1 + x2 + x3`.
pub fn heat_exchanger() -> Result<Problem> {
    let mut lower = vec![100.0, 1000.0, 1000.0];
    lower.extend([10.0; 5]);
    let mut upper = vec![10_000.0; 3];
    upper.extend([1000.0; 5]);
    Problem::builder("heat_exchanger", lower, upper)
        .constraints((1..=6).map(|k| ConstraintSpec::at_most(format!("g{k}"), 0.0)))
        .known_best(KnownBest {
            position: Some(PUBLISHED_BEST.to_vec()),
            objective: PUBLISHED_BEST[..3].iter().sum(),
            provenance: Provenance::Published,
            note: "best 25-bat design".into(),
        })
        .build(|x: &[f64]| {
            let [x1, x2, x3, x4, x5, x6, x7, x8] = [x[0], x[1], x[2], x[3], x[4], x[5], x[6], x[7]];
            Ok(RawEvaluation {
                objective: x1 + x2 + x3,
                constraints: vec![
                    0.0025 * (x4 + x6) - 1.0,
                    0.0025 * (x5 + x7 - x4) - 1.0,
                    0.01 * (x8 - x5) - 1.0,
                    833.332_52 * x4 + 100.0 * x1 - x1 * x6 - 83_333.333,
                    1250.0 * x5 + x2 * x4 - x2 * x7 - 1250.0 * x4,
                    x3 * x5 - 2500.0 * x5 - x3 * x8 + 1_250_000.0,
                ],
            })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reported_design_reproduces_constraint_values() {
        let p = heat_exchanger().unwrap();
        let e = p.evaluate(&PUBLISHED_BEST).unwrap();
        assert_abs_diff_eq!(e.objective, 7049.2480, epsilon = 1e-3);
        let reported = [0.0, 0.0, 0.0, -0.0071449, -0.0061782, -0.0020000];
        for (g, r) in e.constraints.iter().zip(reported) {
            assert_abs_diff_eq!(*g, r, epsilon = 1e-4);
        }
        assert!(e.is_feasible(1e-4));
    }

    #[test]
    fn g1_boundary() {
        let p = heat_exchanger().unwrap();
        let mut x = PUBLISHED_BEST;
        x[3] = 200.0;
        x[5] = 200.0;
        assert_eq!(p.evaluate(&x).unwrap().constraints[0], 0.0);
    }
}
