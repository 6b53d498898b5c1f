//! Dual complex of a curve diagram.
//!
//! Dual 0-cells are regions, dual 1-cells cross arcs (oriented from the right
//! side of the arc to its left, the coorientation direction), dual 2-cells
//! surround double points. The boundary loop of a dual 2-cell runs
//! counterclockwise and starts at the sector of largest Alexander value.

use std::collections::BTreeMap;
use std::fmt;

use crate::alexander::AlexanderCochain;
use crate::diagram::{CurveDiagram, VertexKind};

/// Signed formal sum of dual cells of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    pub degree: usize,
    pub terms: BTreeMap<usize, i64>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn cell(degree: usize, id: usize) -> Self {
        let mut c = Chain::zero(degree);
        c.add(id, 1);
        c
    }

    pub fn add(&mut self, id: usize, coeff: i64) {
        let e = self.terms.entry(id).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.remove(&id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Chain {
        let mut c = Chain::zero(self.degree);
        for (&id, &a) in &self.terms {
            c.add(id, a * k);
        }
        c
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        assert_eq!(
            self.degree, other.degree,
            "adding chains of different degree"
        );
        let mut c = self.clone();
        for (&id, &a) in &other.terms {
            c.add(id, a);
        }
        c
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (id, a)) in self.terms.iter().enumerate() {
            let sign = if *a < 0 {
                "-"
            } else if k > 0 {
                "+"
            } else {
                ""
            };
            let mag = a.abs();
            if mag == 1 {
                write!(f, "{sign}X{}[{id}]", self.degree)?;
            } else {
                write!(f, "{sign}{mag}X{}[{id}]", self.degree)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCell {
    pub dimension: usize,
    pub id: usize,
    /// primal cell: region id, edge index, or vertex index
    pub primal: usize,
    /// signed lower-dimensional incidences, in loop order for 2-cells
    pub incident_lower: Vec<(usize, i64)>,
}

#[derive(Clone, Debug)]
pub struct DualComplex {
    pub cells: [Vec<DualCell>; 3],
    /// for 2-cells: the dual 0-cells visited around the loop, starting at the
    /// sector of largest value
    pub loops: Vec<Vec<usize>>,
}

pub fn build_dual(d: &CurveDiagram, phi: &AlexanderCochain) -> DualComplex {
    let zero: Vec<DualCell> = (0..d.regions().len())
        .map(|r| DualCell {
            dimension: 0,
            id: r,
            primal: r,
            incident_lower: Vec::new(),
        })
        .collect();
    let one: Vec<DualCell> = d
        .edges()
        .iter()
        .enumerate()
        .map(|(ei, e)| DualCell {
            dimension: 1,
            id: ei,
            primal: ei,
            incident_lower: vec![
                (d.left_region(e.forward), 1),
                (d.left_region(e.backward), -1),
            ],
        })
        .collect();
    let mut two = Vec::new();
    let mut loops = Vec::new();
    for (vi, v) in d.vertices().iter().enumerate() {
        if v.kind != VertexKind::Crossing {
            continue;
        }
        let sectors = d.sector_regions(vi);
        let start = (0..4)
            .max_by(|&a, &b| {
                phi.value(sectors[a])
                    .cmp(&phi.value(sectors[b]))
                    .then(b.cmp(&a))
            })
            .expect("four sectors");
        let mut lower = Vec::with_capacity(4);
        let mut visited = Vec::with_capacity(4);
        for k in 0..4 {
            let s = (start + k) % 4;
            visited.push(sectors[s]);
            // stepping from sector s to s+1 crosses dart s+1
            let dart = v.darts[(s + 1) % 4];
            let sign = if d.dart(dart).forward { 1 } else { -1 };
            lower.push((d.dart(dart).edge, sign));
        }
        two.push(DualCell {
            dimension: 2,
            id: two.len(),
            primal: vi,
            incident_lower: lower,
        });
        loops.push(visited);
    }
    DualComplex {
        cells: [zero, one, two],
        loops,
    }
}

impl DualComplex {
    pub fn count(&self, k: usize) -> usize {
        self.cells[k].len()
    }

    pub fn boundary(&self, x: &DualCell) -> Chain {
        let mut c = Chain::zero(x.dimension.saturating_sub(1));
        for &(id, s) in &x.incident_lower {
            c.add(id, s);
        }
        c
    }

    /// Linear extension of the boundary to formal sums.
    pub fn boundary_chain(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero(c.degree.saturating_sub(1));
        for (&id, &a) in &c.terms {
            out = out.plus(&self.boundary(&self.cells[c.degree][id]).scaled(a));
        }
        out
    }

    /// Dual 2-cell surrounding a vertex.
    pub fn cell_at_vertex(&self, v: usize) -> Option<&DualCell> {
        self.cells[2].iter().find(|c| c.primal == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{compute_alexander, Convention};
    use crate::corpus;
    use crate::rational::q;

    fn dual_of(name: &str) -> (CurveDiagram, AlexanderCochain, DualComplex) {
        let d = corpus::diagram(name).unwrap();
        let phi = compute_alexander(&d, Convention::Curve).unwrap();
        let x = build_dual(&d, &phi);
        (d, phi, x)
    }

    #[test]
    fn counts_match_primal() {
        let (_, _, x) = dual_of("figure-eight");
        assert_eq!((x.count(0), x.count(1), x.count(2)), (3, 2, 1));
        let (_, _, x) = dual_of("circle");
        assert_eq!((x.count(0), x.count(1), x.count(2)), (2, 1, 0));
        let (_, _, x) = dual_of("one-kink");
        assert_eq!((x.count(0), x.count(1), x.count(2)), (3, 2, 1));
        for name in corpus::NAMES {
            let (d, _, x) = dual_of(name);
            assert_eq!(x.count(0), d.regions().len());
            assert_eq!(x.count(1), d.edges().len());
            assert_eq!(x.count(2), d.crossing_count());
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        for name in corpus::NAMES {
            let (_, _, x) = dual_of(name);
            for c in &x.cells[2] {
                let b = x.boundary(c);
                assert_eq!(c.incident_lower.len(), 4);
                assert!(x.boundary_chain(&b).is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn dual_one_cell_goes_up_the_numbering() {
        let (_, phi, x) = dual_of("trefoil");
        for c in &x.cells[1] {
            let b = x.boundary(c);
            let v: crate::rational::Q = b.terms.iter().map(|(&r, &s)| q(s) * phi.value(r)).sum();
            assert_eq!(v, q(1));
        }
    }

    #[test]
    fn loop_starts_at_maximum_and_is_canonical() {
        for name in corpus::NAMES {
            let (_, phi, x) = dual_of(name);
            for l in &x.loops {
                let v: Vec<_> = l.iter().map(|&r| phi.value(r)).collect();
                let i = v[1];
                assert_eq!(v, vec![i + q(1), i, i - q(1), i], "{name}");
            }
        }
    }

    #[test]
    fn chain_linearity_helpers() {
        let a = Chain::cell(1, 3);
        let z = a.plus(&a.scaled(-1));
        assert!(z.is_zero());
        assert_eq!(format!("{}", Chain::cell(2, 0).scaled(-2)), "-2X2[0]");
    }
}
