use crate::error::{Error, Result};
use crate::problem::{ConstraintSpec, KnownBest, Problem, Provenance, RawEvaluation};

/// Multistart reference optima, see `tests/oracles/reference_optima.py`.
const ORACLE_12: f64 = 256.752_125_425_6;
const ORACLE_60: f64 = 30_945.277_980_209_3;

/// `sum sqrt(i) (x_i - 1)^2 + (sum x_i^2 - 25)^2` over `0.5 <= x_i <= 10`, with
/// `0 <= x_{4j+1} + 2x_{4j+2} + 3x_{4j+3} + 4x_{4j+4} - 20 <= 30` per block of four.
pub fn mathematical_problem(n: usize) -> Result<Problem> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(Error::InvalidProblem(format!(
            "mathematical problem needs N a positive multiple of 4, got {n}"
        )));
    }
    let weights: Vec<f64> = (1..=n).map(|i| (i as f64).sqrt()).collect();
    let mut builder = Problem::builder(format!("mathematical_{n}"), vec![0.5; n], vec![10.0; n])
        .constraints((1..=n / 4).map(|j| ConstraintSpec::between(format!("g{j}"), 0.0, 30.0)));
    let oracle = match n {
        12 => Some(ORACLE_12),
        60 => Some(ORACLE_60),
        _ => None,
    };
    if let Some(objective) = oracle {
        builder = builder.known_best(KnownBest {
            position: None,
            objective,
            provenance: Provenance::Oracle,
            note: "multistart SLSQP with trust-constr polish".into(),
        });
    }
    builder.build(move |x: &[f64]| {
        let weighted: f64 = x.iter().zip(&weights).map(|(v, w)| w * (v - 1.0).powi(2)).sum();
        let sq: f64 = x.iter().map(|v| v * v).sum();
        let constraints = x
            .chunks_exact(4)
            .map(|b| b[0] + 2.0 * b[1] + 3.0 * b[2] + 4.0 * b[3] - 20.0)
            .collect();
        Ok(RawEvaluation {
            objective: weighted + (sq - 25.0).powi(2),
            constraints,
        })
    })
}
