use serde::{Deserialize, Serialize};

use crate::constraints::EvaluatedPoint;

/// Outcome of one optimizer run, common to the bat algorithm and the baselines.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best: EvaluatedPoint,
    /// Objective evaluations performed, initialization included.
    pub evaluations: usize,
    /// Completed iterations (generations for the baselines).
    pub iterations: usize,
    /// Best-so-far point after initialization and after every iteration.
    pub trace: Vec<EvaluatedPoint>,
}
