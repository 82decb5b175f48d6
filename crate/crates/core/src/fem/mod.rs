//! Linear-static planar frames and strain-based identification of member inertias.
//!
//! Elements are two-node frame members (axial bar plus Euler-Bernoulli beam,
//! three DOFs per node: `u`, `v`, `rz`). Node `n` (1-based) owns global DOFs
//! `3n-2`, `3n-1`, `3n`.

mod identification;
mod model;
mod solver;

pub use identification::{benchmark_geometry, build_benchmark, identification_objective, IdentificationProblem};
pub use model::{
    Component, Element, ElementEntry, FrameModel, Gauge, GaugeEntry, GeometryFile, LoadCase, LoadCaseEntry, LoadEntry,
    Node, NodeEntry, SupportEntry, DOFS_PER_NODE,
};
pub use solver::{
    assemble_stiffness, gauge_row, global_stiffness, load_matrix, local_stiffness, solve_displacements, solve_strains,
    ReducedStiffness,
};
