use crate::error::Result;
use crate::problem::{ConstraintSpec, KnownBest, Problem, Provenance, RawEvaluation};

/// Five-variable nonlinear chemical-process problem, standard form.
pub fn himmelblau() -> Result<Problem> {
    Problem::builder(
        "himmelblau",
        vec![78.0, 33.0, 27.0, 27.0, 27.0],
        vec![102.0, 45.0, 45.0, 45.0, 45.0],
    )
    .constraint(ConstraintSpec::between("g1", 0.0, 92.0))
    .constraint(ConstraintSpec::between("g2", 90.0, 110.0))
    .constraint(ConstraintSpec::between("g3", 20.0, 25.0))
    .known_best(KnownBest {
        position: Some(vec![78.0, 33.0, 29.995_256_03, 45.0, 36.775_812_91]),
        objective: -30_665.538_671_783_7,
        provenance: Provenance::Oracle,
        note: "multistart SLSQP; agrees with the literature optimum".into(),
    })
    .build(|x: &[f64]| {
        let [x1, x2, x3, x4, x5] = [x[0], x[1], x[2], x[3], x[4]];
        Ok(RawEvaluation {
            objective: 5.357_854_7 * x3 * x3 + 0.835_689_1 * x1 * x5 + 37.293_239 * x1 - 40_792.141,
            constraints: vec![
                85.334_407 + 0.005_685_8 * x2 * x5 + 0.000_626_2 * x1 * x4 - 0.002_205_3 * x3 * x5,
                80.512_49 + 0.007_131_7 * x2 * x5 + 0.002_995_5 * x1 * x2 + 0.002_181_3 * x3 * x3,
                9.300_961 + 0.004_702_6 * x3 * x5 + 0.001_254_7 * x1 * x3 + 0.001_908_5 * x3 * x4,
            ],
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lower_corner() {
        let p = himmelblau().unwrap();
        assert_eq!(p.one_sided_constraint_count(), 6);
        let e = p.evaluate(&[78.0, 33.0, 27.0, 27.0, 27.0]).unwrap();
        assert_abs_diff_eq!(e.objective, -32_217.431_037_1, epsilon = 1e-6);
        assert_abs_diff_eq!(e.constraints[0], 90.111_568_3, epsilon = 1e-9);
    }

    #[test]
    fn known_optimum_is_feasible() {
        let p = himmelblau().unwrap();
        let best = p.known_best().unwrap();
        let e = p.evaluate(best.position.as_ref().unwrap()).unwrap();
        assert!(e.is_feasible(1e-6), "{:?}", e.violations);
        assert_abs_diff_eq!(e.objective, best.objective, epsilon = 1e-3);
    }

    #[test]
    fn g2_below_range_violates_lower_side() {
        // Specs order: g1 lo, g1 hi, g2 lo, g2 hi, ...
        let specs = himmelblau().unwrap().constraint_specs().to_vec();
        let v = crate::constraints::violations(&specs, &[50.0, 89.0, 22.0]);
        assert_eq!(v, vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
    }
}
