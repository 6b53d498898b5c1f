//! Local maps d¹ and d² on the dual complex of a curve and the normalized
//! Stokes compatibility around double points.
//!
//! Both maps are evaluated at the double point where they are paired, over
//! local incidences (germs and sector slots), never over aggregated chains: a
//! kink arc meets its own double point twice and would cancel in a formal sum.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alexander::{cell_indices, compute_alexander, AlexanderCochain, CellIndex, Convention};
use crate::diagram::CurveDiagram;
use crate::dual::{build_dual, Chain, DualCell, DualComplex};
use crate::error::{Error, Result};
use crate::findiff::normalization;
use crate::rational::{half, pow, q, Q};

/// Function on dual k-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: BTreeMap<usize, Q>,
}

impl Cochain {
    pub fn new(degree: usize) -> Self {
        Cochain {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn from_alexander(phi: &AlexanderCochain) -> Self {
        Cochain {
            degree: 0,
            values: phi.values.iter().copied().enumerate().collect(),
        }
    }
}

/// `<psi, c>`, linear in the chain. Cells missing from `psi` evaluate to 0.
pub fn evaluate(psi: &Cochain, c: &Chain) -> Result<Q> {
    if psi.degree != c.degree {
        return Err(Error::DegreeMismatch {
            cochain: psi.degree,
            chain: c.degree,
        });
    }
    Ok(c.terms
        .iter()
        .map(|(id, &a)| q(a) * psi.values.get(id).copied().unwrap_or_default())
        .sum())
}

/// Which edge germs at a double point enter the d¹ evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GermRule {
    /// only the two germs along which the curve arrives
    #[default]
    Incoming,
    /// all four germs, divided by the multiplicity 2
    AllWithMultiplicity,
}

/// Index sign of an edge germ at `p`: +1 for index `ind(p)+1/2`, -1 for
/// `ind(p)-1/2`.
pub fn germ_index_sign(d: &CurveDiagram, idx: &CellIndex, p: usize, dart: usize) -> i64 {
    let e = idx.arcs[d.dart(dart).edge];
    let i = idx.point(p);
    if e == i + half(1) {
        1
    } else if e == i - half(1) {
        -1
    } else {
        panic!("germ index {e} is not ind(p) +- 1/2 (ind(p) = {i})")
    }
}

/// Value of d¹φ on the dual 1-cell of one germ at `p`: `sgn * ind(arc)^2`.
pub fn d1_curve(d: &CurveDiagram, idx: &CellIndex, p: usize, dart: usize) -> Q {
    q(germ_index_sign(d, idx, p, dart)) * pow(idx.arcs[d.dart(dart).edge], 2)
}

/// `<d¹φ, ∂X₂>` at double point `p`, summed over the loop incidences.
pub fn d1_boundary_eval(d: &CurveDiagram, idx: &CellIndex, p: usize, rule: GermRule) -> Q {
    let v = &d.vertices()[p];
    let counted = v.darts.iter().filter(|&&h| match rule {
        GermRule::Incoming => !d.dart(h).forward,
        GermRule::AllWithMultiplicity => true,
    });
    let raw: Q = counted.map(|&h| d1_curve(d, idx, p, h)).sum();
    match rule {
        GermRule::Incoming => raw,
        GermRule::AllWithMultiplicity => raw / q(2),
    }
}

/// Sign of sector `k` (between darts `k` and `k+1`): -1 when both bounding
/// darts leave or both enter the double point.
pub fn sector_sign(d: &CurveDiagram, p: usize, k: usize) -> i64 {
    let v = &d.vertices()[p];
    let a = d.dart(v.darts[k]).forward;
    let b = d.dart(v.darts[(k + 1) % 4]).forward;
    if a == b {
        -1
    } else {
        1
    }
}

/// `<d²φ, X₂>` at double point `p`.
pub fn d2_curve(d: &CurveDiagram, phi: &AlexanderCochain, p: usize) -> Q {
    d.sector_regions(p)
        .iter()
        .enumerate()
        .map(|(k, &r)| q(sector_signed(d, p, k)) * pow(phi.value(r), 3))
        .sum()
}

fn sector_signed(d: &CurveDiagram, p: usize, k: usize) -> i64 {
    sector_sign(d, p, k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesRow {
    pub vertex_label: u32,
    pub d2: Q,
    pub d1: Q,
    /// (1/3!) d²
    pub lhs: Q,
    /// (1/2!) d¹
    pub rhs: Q,
    pub ind: Q,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesReport {
    pub diagram: String,
    pub rows: Vec<StokesRow>,
}

impl StokesReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# stokes {}: vertex d2 d1 lhs rhs ind pass",
            self.diagram
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "vertex {} d2={} d1={} lhs={} rhs={} ind={} {}",
                r.vertex_label,
                r.d2,
                r.d1,
                r.lhs,
                r.rhs,
                r.ind,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
        s
    }
}

pub fn check_stokes_with(d: &CurveDiagram, rule: GermRule) -> Result<StokesReport> {
    let phi = compute_alexander(d, Convention::Curve)?;
    let idx = cell_indices(d, &phi);
    let region_norm = normalization(2, 1);
    let edge_norm = normalization(1, 1);
    let rows = d
        .crossings()
        .map(|p| {
            let d2 = d2_curve(d, &phi, p);
            let d1 = d1_boundary_eval(d, &idx, p, rule);
            let lhs = region_norm * d2;
            let rhs = edge_norm * d1;
            let ind = idx.point(p);
            StokesRow {
                vertex_label: d.vertices()[p].label,
                d2,
                d1,
                lhs,
                rhs,
                ind,
                pass: lhs == rhs && rhs == ind,
            }
        })
        .collect();
    Ok(StokesReport {
        diagram: d.name().to_string(),
        rows,
    })
}

pub fn check_stokes_curve(d: &CurveDiagram) -> Result<StokesReport> {
    check_stokes_with(d, GermRule::Incoming)
}

/// d¹ at `p` as a cochain on dual 1-cells, folding in the orientation of each
/// germ's dual 1-cell along the loop so the signed pairing with `∂X₂`
/// reproduces the germ sum. Only valid when every arc meets `p` once on the
/// counted germs.
pub fn d1_local_cochain(
    d: &CurveDiagram,
    idx: &CellIndex,
    dual: &DualComplex,
    p: usize,
) -> Option<Cochain> {
    let cell = dual.cell_at_vertex(p)?;
    let v = &d.vertices()[p];
    let mut c = Cochain::new(1);
    for (k, &(edge, sign)) in cell.incident_lower.iter().enumerate() {
        let _ = k;
        let dart = *v
            .darts
            .iter()
            .find(|&&h| d.dart(h).edge == edge && !d.dart(h).forward)?;
        if d.dart(dart).forward {
            continue;
        }
        if c.values.contains_key(&edge) {
            return None;
        }
        c.values.insert(edge, q(sign) * d1_curve(d, idx, p, dart));
    }
    Some(c)
}

/// Dual 2-cell and its boundary chain at `p`.
pub fn stokes_cell(dual: &DualComplex, p: usize) -> Option<(&DualCell, Chain)> {
    let c = dual.cell_at_vertex(p)?;
    Some((c, dual.boundary(c)))
}

/// Convenience bundle for callers that only have a diagram.
pub fn prepare(d: &CurveDiagram) -> Result<(AlexanderCochain, CellIndex, DualComplex)> {
    let phi = compute_alexander(d, Convention::Curve)?;
    let idx = cell_indices(d, &phi);
    let dual = build_dual(d, &phi);
    Ok((phi, idx, dual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// d¹ pair `(i+1/2)^2 - (i-1/2)^2` and d² quadruple
    /// `(i+1)^3 - i^3 - i^3 + (i-1)^3`, written out directly.
    fn d1_formula(i: i64) -> Q {
        pow(q(i) + half(1), 2) - pow(q(i) - half(1), 2)
    }

    fn d2_formula(i: i64) -> Q {
        pow(q(i + 1), 3) - pow(q(i), 3) - pow(q(i), 3) + pow(q(i - 1), 3)
    }

    #[test]
    fn local_formulas() {
        assert_eq!(d1_formula(1), q(2));
        assert_eq!(d1_formula(0), q(0));
        assert_eq!(d1_formula(-3), q(-6));
        assert_eq!(d2_formula(2), q(12));
        assert_eq!(d2_formula(0), q(0));
        assert_eq!(d2_formula(-1), q(-6));
        assert_eq!(d2_formula(1), q(6));
    }

    #[test]
    fn one_kink_and_figure_eight() {
        let d = corpus::diagram("one-kink").unwrap();
        let r = check_stokes_curve(&d).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!((r.rows[0].d2, r.rows[0].d1), (q(6), q(2)));
        assert_eq!(
            (r.rows[0].lhs, r.rows[0].rhs, r.rows[0].ind),
            (q(1), q(1), q(1))
        );
        assert!(r.pass());

        let d = corpus::diagram("figure-eight").unwrap();
        let r = check_stokes_curve(&d).unwrap();
        assert_eq!((r.rows[0].lhs, r.rows[0].rhs), (q(0), q(0)));
        assert!(r.pass());
    }

    #[test]
    fn corpus_passes_under_both_germ_rules() {
        for name in corpus::NAMES {
            let d = corpus::diagram(name).unwrap();
            let a = check_stokes_with(&d, GermRule::Incoming).unwrap();
            let b = check_stokes_with(&d, GermRule::AllWithMultiplicity).unwrap();
            assert!(a.pass() && b.pass(), "{name}");
            let (_, idx, _) = prepare(&d).unwrap();
            for p in d.crossings() {
                // all four germs give twice the incoming sum before division
                let all: Q = d.vertices()[p]
                    .darts
                    .iter()
                    .map(|&h| d1_curve(&d, &idx, p, h))
                    .sum();
                assert_eq!(
                    all,
                    q(2) * d1_boundary_eval(&d, &idx, p, GermRule::Incoming)
                );
            }
        }
    }

    #[test]
    fn sector_signs_pick_the_equal_pair() {
        for name in corpus::NAMES {
            let d = corpus::diagram(name).unwrap();
            let (phi, idx, _) = prepare(&d).unwrap();
            for p in d.crossings() {
                let i = idx.point(p);
                let secs = d.sector_regions(p);
                let minus: Vec<usize> = (0..4).filter(|&k| sector_sign(&d, p, k) < 0).collect();
                assert_eq!(minus.len(), 2);
                for k in minus {
                    assert_eq!(phi.value(secs[k]), i);
                }
            }
        }
    }

    #[test]
    fn evaluation_is_linear_and_typed() {
        let d = corpus::diagram("trefoil").unwrap();
        let (phi, idx, dual) = prepare(&d).unwrap();
        let psi = Cochain::from_alexander(&phi);
        let x = Chain::cell(0, 1);
        assert_eq!(evaluate(&psi, &x.plus(&x.scaled(-1))).unwrap(), q(0));
        assert!(matches!(
            evaluate(&psi, &Chain::cell(1, 0)),
            Err(Error::DegreeMismatch { .. })
        ));
        // a dual 1-cell pairs with phi to +1
        for c in &dual.cells[1] {
            assert_eq!(evaluate(&psi, &dual.boundary(c)).unwrap(), q(1));
        }
        // signed pairing of the local d¹ cochain with the loop
        for p in d.crossings() {
            if let Some(c) = d1_local_cochain(&d, &idx, &dual, p) {
                let (_, b) = stokes_cell(&dual, p).unwrap();
                assert_eq!(
                    evaluate(&c, &b).unwrap(),
                    d1_boundary_eval(&d, &idx, p, GermRule::Incoming)
                );
            }
        }
    }

    #[test]
    fn reversal_negates_d2() {
        for name in corpus::NAMES {
            let d = corpus::diagram(name).unwrap();
            let r = d.reversed();
            let (phi, _, _) = prepare(&d).unwrap();
            let (phr, _, _) = prepare(&r).unwrap();
            for p in d.crossings() {
                assert_eq!(d2_curve(&r, &phr, p), -d2_curve(&d, &phi, p));
            }
        }
    }
}
