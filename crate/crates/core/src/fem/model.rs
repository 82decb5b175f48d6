use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

pub const DOFS_PER_NODE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Element {
    /// 0-based node indices.
    pub nodes: [usize; 2],
    pub area: f64,
    /// 0-based index of the inertia parameter this member uses.
    pub parameter: usize,
}

/// Strain gauge on a member: `position` is the fraction of the length from
/// the first node, `fiber_offset` the signed distance from the neutral axis
/// along the member's local y.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gauge {
    pub element: usize,
    pub position: f64,
    pub fiber_offset: f64,
}

/// Nodal forces of one loading state as (0-based global DOF, force in N).
#[derive(Clone, Debug, PartialEq)]
pub struct LoadCase {
    pub loads: Vec<(usize, f64)>,
}

/// Linear-static planar frame. Lengths in cm, forces in N, modulus in N/cm².
#[derive(Clone, Debug, PartialEq)]
pub struct FrameModel {
    pub nodes: Vec<Node>,
    pub elements: Vec<Element>,
    /// 0-based fixed global DOFs, sorted.
    pub supports: Vec<usize>,
    pub elastic_modulus: f64,
    pub gauges: Vec<Gauge>,
    pub load_cases: Vec<LoadCase>,
    pub parameter_count: usize,
}

impl FrameModel {
    pub fn dof_count(&self) -> usize {
        self.nodes.len() * DOFS_PER_NODE
    }

    pub fn element_length(&self, e: &Element) -> f64 {
        let (a, b) = (self.nodes[e.nodes[0]], self.nodes[e.nodes[1]]);
        (b.x - a.x).hypot(b.y - a.y)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Geometry(msg));
        if !(self.elastic_modulus > 0.0 && self.elastic_modulus.is_finite()) {
            return fail(format!(
                "elastic modulus must be positive, got {}",
                self.elastic_modulus
            ));
        }
        if self.elements.is_empty() {
            return fail("no elements".into());
        }
        for (i, e) in self.elements.iter().enumerate() {
            if e.nodes.iter().any(|n| *n >= self.nodes.len()) || e.nodes[0] == e.nodes[1] {
                return fail(format!("element {} references invalid nodes", i + 1));
            }
            if !(e.area > 0.0 && e.area.is_finite()) {
                return fail(format!("element {} has non-positive area", i + 1));
            }
            if e.parameter >= self.parameter_count {
                return fail(format!("element {} uses unknown parameter {}", i + 1, e.parameter + 1));
            }
            if self.element_length(e) <= 0.0 {
                return fail(format!("element {} has zero length", i + 1));
            }
        }
        for p in 0..self.parameter_count {
            if !self.elements.iter().any(|e| e.parameter == p) {
                return fail(format!("parameter {} is used by no element", p + 1));
            }
        }
        if self.supports.iter().any(|d| *d >= self.dof_count()) {
            return fail("support references a DOF beyond the last node".into());
        }
        for (i, g) in self.gauges.iter().enumerate() {
            if g.element >= self.elements.len() || !(0.0..=1.0).contains(&g.position) {
                return fail(format!("gauge {} is not on a member", i + 1));
            }
        }
        for (i, case) in self.load_cases.iter().enumerate() {
            for (dof, force) in &case.loads {
                if *dof >= self.dof_count() || self.supports.binary_search(dof).is_ok() {
                    return fail(format!("load case {} loads DOF {} which is not free", i + 1, dof + 1));
                }
                if !force.is_finite() {
                    return fail(format!("load case {} has a non-finite force", i + 1));
                }
            }
        }
        Ok(())
    }
}

/// Geometry definition file contents.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryFile {
    pub elastic_modulus_gpa: f64,
    #[serde(default)]
    pub true_inertias: Option<Vec<f64>>,
    #[serde(default)]
    pub inertia_bounds: Option<[f64; 2]>,
    #[serde(rename = "node")]
    pub nodes: Vec<NodeEntry>,
    #[serde(rename = "element")]
    pub elements: Vec<ElementEntry>,
    #[serde(rename = "support", default)]
    pub supports: Vec<SupportEntry>,
    #[serde(rename = "gauge", default)]
    pub gauges: Vec<GaugeEntry>,
    #[serde(rename = "load_case", default)]
    pub load_cases: Vec<LoadCaseEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeEntry {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementEntry {
    pub nodes: [usize; 2],
    pub area: f64,
    pub parameter: usize,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    U,
    V,
    Rz,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub node: usize,
    pub fix: Vec<Component>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaugeEntry {
    pub element: usize,
    #[serde(default = "midpoint")]
    pub position: f64,
    pub fiber_offset: f64,
}

fn midpoint() -> f64 {
    0.5
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadCaseEntry {
    pub loads: Vec<LoadEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadEntry {
    pub dof: usize,
    pub force: f64,
}

const GPA_TO_N_PER_CM2: f64 = 1e5;

impl GeometryFile {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Geometry(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_model(&self) -> Result<FrameModel> {
        let one_based = |i: usize, what: &str| {
            i.checked_sub(1)
                .ok_or_else(|| Error::Geometry(format!("{what} indices are 1-based, got 0")))
        };
        let nodes = self.nodes.iter().map(|n| Node { x: n.x, y: n.y }).collect();
        let elements = self
            .elements
            .iter()
            .map(|e| {
                Ok(Element {
                    nodes: [one_based(e.nodes[0], "node")?, one_based(e.nodes[1], "node")?],
                    area: e.area,
                    parameter: one_based(e.parameter, "parameter")?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut supports = Vec::new();
        for s in &self.supports {
            let base = one_based(s.node, "node")? * DOFS_PER_NODE;
            for c in &s.fix {
                supports.push(
                    base + match c {
                        Component::U => 0,
                        Component::V => 1,
                        Component::Rz => 2,
                    },
                );
            }
        }
        supports.sort_unstable();
        supports.dedup();
        let gauges = self
            .gauges
            .iter()
            .map(|g| {
                Ok(Gauge {
                    element: one_based(g.element, "element")?,
                    position: g.position,
                    fiber_offset: g.fiber_offset,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let load_cases = self
            .load_cases
            .iter()
            .map(|c| {
                Ok(LoadCase {
                    loads: c
                        .loads
                        .iter()
                        .map(|l| Ok((one_based(l.dof, "DOF")?, l.force)))
                        .collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let parameter_count = elements.iter().map(|e: &Element| e.parameter + 1).max().unwrap_or(0);
        let model = FrameModel {
            nodes,
            elements,
            supports,
            elastic_modulus: self.elastic_modulus_gpa * GPA_TO_N_PER_CM2,
            gauges,
            load_cases,
            parameter_count,
        };
        model.validate()?;
        Ok(model)
    }
}
