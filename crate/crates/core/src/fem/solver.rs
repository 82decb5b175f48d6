use nalgebra::{Cholesky, DMatrix, Dyn, SMatrix};

use super::model::{Element, FrameModel, Gauge, DOFS_PER_NODE};
use crate::error::{Error, Result};

type Mat6 = SMatrix<f64, 6, 6>;

/// Global stiffness restricted to the free DOFs, with its factorization.
#[derive(Clone, Debug)]
pub struct ReducedStiffness {
    pub matrix: DMatrix<f64>,
    /// Free global DOF (0-based) for each row of `matrix`.
    pub free_dofs: Vec<usize>,
    factor: Cholesky<f64, Dyn>,
}

impl ReducedStiffness {
    pub fn solve(&self, rhs: &DMatrix<f64>) -> DMatrix<f64> {
        self.factor.solve(rhs)
    }
}

fn direction(model: &FrameModel, e: &Element) -> (f64, f64, f64) {
    let (a, b) = (model.nodes[e.nodes[0]], model.nodes[e.nodes[1]]);
    let length = model.element_length(e);
    (length, (b.x - a.x) / length, (b.y - a.y) / length)
}

/// Local-to-global rotation for the six element DOFs `(u1, v1, rz1, u2, v2, rz2)`.
fn rotation(c: f64, s: f64) -> Mat6 {
    let mut t = Mat6::zeros();
    for base in [0, 3] {
        t[(base, base)] = c;
        t[(base, base + 1)] = s;
        t[(base + 1, base)] = -s;
        t[(base + 1, base + 1)] = c;
        t[(base + 2, base + 2)] = 1.0;
    }
    t
}

/// Axial bar plus Euler-Bernoulli beam stiffness in local coordinates.
pub fn local_stiffness(modulus: f64, area: f64, inertia: f64, length: f64) -> Mat6 {
    let ea = modulus * area / length;
    let ei = modulus * inertia;
    let (l, l2, l3) = (length, length * length, length.powi(3));
    let mut k = Mat6::zeros();
    k[(0, 0)] = ea;
    k[(0, 3)] = -ea;
    k[(3, 0)] = -ea;
    k[(3, 3)] = ea;
    let bend = [
        (1, 1, 12.0 * ei / l3),
        (1, 2, 6.0 * ei / l2),
        (1, 4, -12.0 * ei / l3),
        (1, 5, 6.0 * ei / l2),
        (2, 2, 4.0 * ei / l),
        (2, 4, -6.0 * ei / l2),
        (2, 5, 2.0 * ei / l),
        (4, 4, 12.0 * ei / l3),
        (4, 5, -6.0 * ei / l2),
        (5, 5, 4.0 * ei / l),
    ];
    for (i, j, v) in bend {
        k[(i, j)] = v;
        k[(j, i)] = v;
    }
    k
}

fn element_dofs(e: &Element) -> [usize; 6] {
    let a = e.nodes[0] * DOFS_PER_NODE;
    let b = e.nodes[1] * DOFS_PER_NODE;
    [a, a + 1, a + 2, b, b + 1, b + 2]
}

fn check_inertias(model: &FrameModel, inertias: &[f64]) -> Result<()> {
    if inertias.len() != model.parameter_count {
        return Err(Error::LengthMismatch {
            expected: model.parameter_count,
            actual: inertias.len(),
        });
    }
    if let Some(bad) = inertias.iter().find(|i| !(**i > 0.0 && i.is_finite())) {
        return Err(Error::Evaluation(format!(
            "inertias must be positive and finite, got {bad}"
        )));
    }
    Ok(())
}

/// Full global stiffness (all DOFs, supports included).
pub fn global_stiffness(model: &FrameModel, inertias: &[f64]) -> Result<DMatrix<f64>> {
    check_inertias(model, inertias)?;
    let n = model.dof_count();
    let mut k = DMatrix::zeros(n, n);
    for e in &model.elements {
        let (length, c, s) = direction(model, e);
        let t = rotation(c, s);
        let ke = t.transpose() * local_stiffness(model.elastic_modulus, e.area, inertias[e.parameter], length) * t;
        // Symmetrize so rounding in the rotation cannot break exact symmetry.
        let ke = (ke + ke.transpose()) * 0.5;
        let dofs = element_dofs(e);
        for (a, &ga) in dofs.iter().enumerate() {
            for (b, &gb) in dofs.iter().enumerate() {
                k[(ga, gb)] += ke[(a, b)];
            }
        }
    }
    Ok(k)
}

/// Global stiffness with supported DOFs eliminated, factorized.
pub fn assemble_stiffness(model: &FrameModel, inertias: &[f64]) -> Result<ReducedStiffness> {
    let full = global_stiffness(model, inertias)?;
    let free_dofs: Vec<usize> = (0..model.dof_count())
        .filter(|d| model.supports.binary_search(d).is_err())
        .collect();
    let matrix = full.select_rows(&free_dofs).select_columns(&free_dofs);
    let factor = Cholesky::new(matrix.clone()).ok_or(Error::SingularStiffness)?;
    // Cholesky can succeed on a mechanism with a pivot at rounding level;
    // pivots below 1e-12 of the largest (squared ratio) count as singular.
    let l = factor.l_dirty();
    let (min, max) = (0..matrix.nrows())
        .map(|i| l[(i, i)])
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    // also catches NaN pivots
    if min.is_nan() || min <= max * 1e-6 {
        return Err(Error::SingularStiffness);
    }
    Ok(ReducedStiffness {
        matrix,
        free_dofs,
        factor,
    })
}

/// Load matrix over the free DOFs, one column per load case.
pub fn load_matrix(model: &FrameModel, free_dofs: &[usize]) -> DMatrix<f64> {
    let mut f = DMatrix::zeros(free_dofs.len(), model.load_cases.len());
    for (c, case) in model.load_cases.iter().enumerate() {
        for &(dof, force) in &case.loads {
            if let Ok(row) = free_dofs.binary_search(&dof) {
                f[(row, c)] += force;
            }
        }
    }
    f
}

/// Nodal displacements over the free DOFs, one column per load case.
pub fn solve_displacements(model: &FrameModel, inertias: &[f64]) -> Result<(ReducedStiffness, DMatrix<f64>)> {
    let stiffness = assemble_stiffness(model, inertias)?;
    let f = load_matrix(model, &stiffness.free_dofs);
    let u = stiffness.solve(&f);
    Ok((stiffness, u))
}

/// Strain-displacement row of a gauge over the free DOFs:
/// `eps = du/dx - y * d2v/dx2` at the gauge location, from the linear axial
/// and cubic Hermite transverse shape functions.
pub fn gauge_row(model: &FrameModel, gauge: &Gauge, free_dofs: &[usize]) -> Vec<f64> {
    let e = &model.elements[gauge.element];
    let (length, c, s) = direction(model, e);
    let t = rotation(c, s);
    let xi = gauge.position;
    let l = length;
    let mut local = [0.0; 6];
    local[0] = -1.0 / l;
    local[3] = 1.0 / l;
    let y = gauge.fiber_offset;
    local[1] = -y * (-6.0 + 12.0 * xi) / (l * l);
    local[2] = -y * (-4.0 + 6.0 * xi) / l;
    local[4] = -y * (6.0 - 12.0 * xi) / (l * l);
    local[5] = -y * (-2.0 + 6.0 * xi) / l;
    let mut row = vec![0.0; free_dofs.len()];
    for (b, gdof) in element_dofs(e).iter().enumerate() {
        if let Ok(pos) = free_dofs.binary_search(gdof) {
            // local = T * global, so the global coefficient is sum_a local[a] * T[a, b].
            row[pos] += (0..6).map(|a| local[a] * t[(a, b)]).sum::<f64>();
        }
    }
    row
}

/// Measured-gauge strains for every load case: `B_a K^-1 F`, shape gauges x load cases.
pub fn solve_strains(model: &FrameModel, inertias: &[f64]) -> Result<DMatrix<f64>> {
    let (stiffness, u) = solve_displacements(model, inertias)?;
    let rows: Vec<Vec<f64>> = model
        .gauges
        .iter()
        .map(|g| gauge_row(model, g, &stiffness.free_dofs))
        .collect();
    let b = DMatrix::from_fn(rows.len(), stiffness.free_dofs.len(), |i, j| rows[i][j]);
    Ok(b * u)
}
