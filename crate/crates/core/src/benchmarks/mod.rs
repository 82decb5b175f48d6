//! The analytic engineering benchmarks and the name registry.

mod cantilever;
mod car_side;
mod heat_exchanger;
mod himmelblau;
mod mathematical;
mod speed_reducer;
mod truss;

pub use cantilever::cantilever_beam;
pub use car_side::{car_side_impact, MATERIAL_SET};
pub use heat_exchanger::{heat_exchanger, PUBLISHED_BEST as HEAT_EXCHANGER_PUBLISHED_BEST};
pub use himmelblau::himmelblau;
pub use mathematical::mathematical_problem;
pub use speed_reducer::{speed_reducer, speed_reducer_variant, SpeedReducerVariant};
pub use truss::{three_bar_truss, TRUSS_MIN_AREA};

use crate::error::{Error, Result};
use crate::fem;
use crate::problem::Problem;

/// Stable names accepted by [`lookup`]. `mathematical_<N>` also resolves for
/// any positive multiple of four.
pub const PROBLEM_NAMES: [&str; 10] = [
    "mathematical_12",
    "mathematical_60",
    "himmelblau",
    "three_bar_truss",
    "speed_reducer",
    "speed_reducer_9",
    "parameter_identification",
    "cantilever_beam",
    "heat_exchanger",
    "car_side_impact",
];

pub fn lookup(name: &str) -> Result<Problem> {
    match name {
        "himmelblau" => himmelblau(),
        "three_bar_truss" => three_bar_truss(),
        "speed_reducer" => speed_reducer(),
        "speed_reducer_9" => speed_reducer_variant(SpeedReducerVariant::NineConstraint),
        "parameter_identification" => fem::build_benchmark()?.to_problem(),
        "cantilever_beam" => cantilever_beam(),
        "heat_exchanger" => heat_exchanger(),
        "car_side_impact" => car_side_impact(),
        other => match other
            .strip_prefix("mathematical_")
            .and_then(|n| n.parse::<usize>().ok())
        {
            Some(n) if n > 0 && n % 4 == 0 => mathematical_problem(n),
            _ => Err(Error::UnknownProblem {
                name: name.to_string(),
                available: PROBLEM_NAMES.iter().map(|s| s.to_string()).collect(),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registered_name_resolves() {
        for name in PROBLEM_NAMES {
            let p = lookup(name).unwrap();
            assert_eq!(p.name(), name);
        }
    }

    #[test]
    fn truss_is_two_dimensional() {
        assert_eq!(lookup("three_bar_truss").unwrap().dimension(), 2);
    }

    #[test]
    fn unknown_name_lists_alternatives() {
        let err = lookup("no_such").unwrap_err().to_string();
        assert!(err.contains("no_such"));
        assert!(err.contains("three_bar_truss"));
        assert!(err.contains("car_side_impact"));
        assert!(lookup("mathematical_7").is_err());
        assert_eq!(lookup("mathematical_8").unwrap().dimension(), 8);
    }
}
