//! Bat-inspired metaheuristic optimization for constrained engineering design.
//!
//! The crate bundles the swarm optimizer ([`bat`]), the constrained problem
//! model and comparison rules ([`problem`], [`constraints`]), a catalogue of
//! engineering benchmarks ([`benchmarks`]), a planar-frame identification
//! problem ([`fem`]) and the experiment harness used to run replicates.

pub mod baselines;
pub mod bat;
pub mod benchmarks;
pub mod constraints;
pub mod error;
pub mod fem;
pub mod harness;
pub mod problem;
pub mod rng;
pub mod solution;

pub use baselines::{run_baseline, Algorithm, BaselineConfig};
pub use bat::{run, SwarmConfig};
pub use constraints::{ConstraintHandler, EvaluatedPoint, HandlerMode};
pub use error::{Error, Result};
pub use harness::{run_experiment, AlgorithmSpec, ExperimentSpec, RunReport};
pub use problem::{ConstraintSpec, KnownBest, Problem, Provenance, RawEvaluation};
pub use rng::{derive_seed, RandomStream};
pub use solution::OptimizationResult;
