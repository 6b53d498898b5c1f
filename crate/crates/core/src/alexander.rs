//! Alexander numbering of regions and the induced cell indices.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::diagram::{CurveDiagram, VertexKind, UNBOUNDED};
use crate::error::{Error, Result};
use crate::rational::{half, q, Q};

/// Base value of the unbounded region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    /// unbounded region is 0
    Curve,
    /// unbounded region is -3/2, as for slices of a surface
    SurfaceShifted,
}

impl Convention {
    pub fn base(self) -> Q {
        match self {
            Convention::Curve => q(0),
            Convention::SurfaceShifted => half(-3),
        }
    }
}

/// Region values, indexed by region id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderCochain {
    pub values: Vec<Q>,
    pub convention: Convention,
}

impl AlexanderCochain {
    pub fn value(&self, region: usize) -> Q {
        self.values[region]
    }

    pub fn shifted(&self, convention: Convention) -> AlexanderCochain {
        let delta = convention.base() - self.convention.base();
        AlexanderCochain {
            values: self.values.iter().map(|v| v + delta).collect(),
            convention,
        }
    }
}

/// Crossing an arc from its right to its left raises the value by one.
pub fn compute_alexander(d: &CurveDiagram, convention: Convention) -> Result<AlexanderCochain> {
    let n = d.regions().len();
    // adjacency: (neighbour, value(neighbour) - value(self))
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for e in d.edges() {
        let left = d.left_region(e.forward);
        let right = d.left_region(e.backward);
        adj[right].push((left, 1));
        adj[left].push((right, -1));
    }
    let mut values: Vec<Option<Q>> = vec![None; n];
    values[UNBOUNDED] = Some(convention.base());
    let mut queue = VecDeque::from([UNBOUNDED]);
    while let Some(r) = queue.pop_front() {
        let vr = values[r].expect("queued regions are numbered");
        for &(s, step) in &adj[r] {
            let want = vr + q(step);
            match values[s] {
                None => {
                    values[s] = Some(want);
                    queue.push_back(s);
                }
                Some(v) if v != want => {
                    return Err(Error::Inconsistent(format!(
                        "region {s} reached with values {v} and {want}"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(r, v)| v.ok_or_else(|| Error::Inconsistent(format!("region {r} unreachable"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(AlexanderCochain { values, convention })
}

/// Indices of arcs (average of the two sides) and double points (average of
/// the four sector slots, with multiplicity). Regions index as their value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellIndex {
    /// by vertex index; `None` for markers
    pub points: Vec<Option<Q>>,
    /// by edge index
    pub arcs: Vec<Q>,
    /// by region id
    pub regions: Vec<Q>,
}

impl CellIndex {
    pub fn point(&self, v: usize) -> Q {
        self.points[v].expect("index requested for a marker")
    }
}

pub fn cell_indices(d: &CurveDiagram, phi: &AlexanderCochain) -> CellIndex {
    let points = d
        .vertices()
        .iter()
        .enumerate()
        .map(|(vi, v)| match v.kind {
            VertexKind::Marker => None,
            VertexKind::Crossing => {
                let sum: Q = d.sector_regions(vi).iter().map(|&r| phi.value(r)).sum();
                Some(sum / q(4))
            }
        })
        .collect();
    let arcs = d
        .edges()
        .iter()
        .map(|e| {
            (phi.value(d.left_region(e.forward)) + phi.value(d.left_region(e.backward))) / q(2)
        })
        .collect();
    CellIndex {
        points,
        arcs,
        regions: phi.values.clone(),
    }
}

/// Sector values at a double point, counterclockwise.
pub fn sector_values(d: &CurveDiagram, phi: &AlexanderCochain, v: usize) -> Vec<Q> {
    d.sector_regions(v).iter().map(|&r| phi.value(r)).collect()
}

/// Whether the sector values have the shape `{i+1, i, i, i-1}`, with the two
/// `i` sectors opposite each other.
pub fn has_crossing_pattern(values: &[Q]) -> bool {
    if values.len() != 4 {
        return false;
    }
    let i: Q = values.iter().sum::<Q>() / q(4);
    let mut sorted = values.to_vec();
    sorted.sort();
    sorted == vec![i - q(1), i, i, i + q(1)] && (values[0] == values[2] || values[1] == values[3])
}

/// Region table in region order: `region witness value`.
pub fn dump(d: &CurveDiagram, phi: &AlexanderCochain) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# region witness value");
    for (r, v) in phi.values.iter().enumerate() {
        let w = d
            .region_witness(r)
            .map(|l| l.to_string())
            .unwrap_or_else(|| "-".into());
        let tag = if r == UNBOUNDED { " unbounded" } else { "" };
        let _ = writeln!(s, "region {r} {w} {v}{tag}");
    }
    s
}
