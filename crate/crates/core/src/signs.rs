//! Local sign systems: the untwisted signs behind St₍₁₎ and the twisted
//! system (ε, edge signs, gleams) behind the original St.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::alexander::{cell_indices, AlexanderCochain, CellIndex};
use crate::derham::{germ_index_sign, sector_sign};
use crate::diagram::{CurveDiagram, VertexKind};
use crate::error::{Error, Result};
use crate::rational::{half, q, Q};

/// How the frame of the two passes at a double point is turned into ε.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EpsilonConvention {
    /// ε = +1 iff (t_second, t_first) is a positive frame
    #[default]
    Standard,
    /// the negation
    Opposite,
}

impl FromStr for EpsilonConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(EpsilonConvention::Standard),
            "opposite" => Ok(EpsilonConvention::Opposite),
            _ => Err(Error::Invalid(format!(
                "unknown epsilon convention `{s}` (expected standard or opposite)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UntwistedSigns {
    /// (vertex, slot) -> sign of the edge germ of dart `slot`
    pub edge: BTreeMap<(usize, usize), i64>,
    /// (vertex, slot) -> sign of sector `slot`
    pub region: BTreeMap<(usize, usize), i64>,
}

pub fn untwisted_signs(d: &CurveDiagram, idx: &CellIndex) -> UntwistedSigns {
    let mut edge = BTreeMap::new();
    let mut region = BTreeMap::new();
    for p in d.crossings() {
        for (k, &h) in d.vertices()[p].darts.iter().enumerate() {
            edge.insert((p, k), germ_index_sign(d, idx, p, h));
            region.insert((p, k), sector_sign(d, p, k));
        }
    }
    UntwistedSigns { edge, region }
}

/// First and second outgoing forward darts at every double point, walking
/// the strand from the middle of `base_edge`.
pub fn pass_order(d: &CurveDiagram, base_edge: usize) -> Result<BTreeMap<usize, (usize, usize)>> {
    d.require_single_strand()?;
    let start = d.edges()[base_edge].forward;
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let mut out = BTreeMap::new();
    let mut h = start;
    loop {
        let n = d.strand_next(h);
        let v = d.dart(n).vertex;
        if d.vertices()[v].kind == VertexKind::Crossing {
            match first.get(&v) {
                None => {
                    first.insert(v, n);
                }
                Some(&f) => {
                    out.insert(v, (f, n));
                }
            }
        }
        h = n;
        if h == start {
            break;
        }
    }
    Ok(out)
}

fn base_edge_of(d: &CurveDiagram) -> Result<usize> {
    d.base_edge()
        .or_else(|| {
            // default: the least-labelled arc on the unbounded region
            let l = *d.outer_arcs().iter().min()?;
            Some(d.dart(d.dart_index(l)?).edge)
        })
        .ok_or_else(|| Error::BaseEdge("diagram has no arcs".into()))
}

/// ε at every double point for the diagram's base arc (or the default one).
pub fn epsilon(d: &CurveDiagram, conv: EpsilonConvention) -> Result<BTreeMap<usize, i64>> {
    epsilon_at(d, base_edge_of(d)?, conv)
}

pub fn epsilon_at(
    d: &CurveDiagram,
    base_edge: usize,
    conv: EpsilonConvention,
) -> Result<BTreeMap<usize, i64>> {
    let e = &d.edges()[base_edge];
    let outer = [e.forward, e.backward]
        .iter()
        .any(|&h| d.left_region(h) == crate::diagram::UNBOUNDED);
    if !outer {
        return Err(Error::BaseEdge(format!(
            "arc {} does not border the unbounded region",
            d.dart(e.forward).label
        )));
    }
    let flip = match conv {
        EpsilonConvention::Standard => 1,
        EpsilonConvention::Opposite => -1,
    };
    Ok(pass_order(d, base_edge)?
        .into_iter()
        .map(|(v, (first, second))| {
            let positive = d.dart(second).ccw_next == first;
            (v, flip * if positive { 1 } else { -1 })
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedSigns {
    pub epsilon: BTreeMap<usize, i64>,
    /// by edge index; 0 for an arc ending at a marker
    pub edge: Vec<i64>,
    /// (vertex, slot) -> ±1/2
    pub gleam_local: BTreeMap<(usize, usize), Q>,
    /// by region id
    pub gleam: Vec<Q>,
}

/// Twisted signs from ε. The sign of an arc is read at its head, where the
/// curve arrives at a double point.
pub fn gleams(
    d: &CurveDiagram,
    phi: &AlexanderCochain,
    eps: &BTreeMap<usize, i64>,
) -> TwistedSigns {
    let idx = cell_indices(d, phi);
    let edge = d
        .edges()
        .iter()
        .map(|e| {
            let germ = e.backward;
            let p = d.dart(germ).vertex;
            match eps.get(&p) {
                Some(&s) => s * germ_index_sign(d, &idx, p, germ),
                None => 0,
            }
        })
        .collect();
    let mut gleam_local = BTreeMap::new();
    let mut gleam = vec![q(0); d.regions().len()];
    for (&p, &s) in eps {
        let i = idx.point(p);
        for (k, r) in d.sector_regions(p).into_iter().enumerate() {
            // the two equal-index slots carry -ε/2, the others +ε/2
            let g = if phi.value(r) == i { half(-s) } else { half(s) };
            gleam_local.insert((p, k), g);
            gleam[r] += g;
        }
    }
    TwistedSigns {
        epsilon: eps.clone(),
        edge,
        gleam_local,
        gleam,
    }
}

/// Table of ε, s(e) and g(R).
pub fn dump(d: &CurveDiagram, t: &TwistedSigns) -> String {
    let mut s = String::new();
    for (&p, &e) in &t.epsilon {
        let _ = writeln!(
            s,
            "epsilon {} {}",
            d.vertices()[p].label,
            crate::rational::sign_str(e)
        );
    }
    for (ei, &sign) in t.edge.iter().enumerate() {
        let _ = writeln!(
            s,
            "edge {} {}",
            d.dart(d.edges()[ei].forward).label,
            crate::rational::sign_str(sign)
        );
    }
    for (r, g) in t.gleam.iter().enumerate() {
        let _ = writeln!(s, "gleam {r} {g}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{compute_alexander, Convention};
    use crate::corpus;
    use crate::rational::pow;

    fn setup(name: &str) -> (CurveDiagram, AlexanderCochain, CellIndex) {
        let d = corpus::diagram(name).unwrap();
        let phi = compute_alexander(&d, Convention::Curve).unwrap();
        let idx = cell_indices(&d, &phi);
        (d, phi, idx)
    }

    #[test]
    fn untwisted_local_sums() {
        for name in corpus::NAMES {
            let (d, phi, idx) = setup(name);
            let u = untwisted_signs(&d, &idx);
            for p in d.crossings() {
                let i = idx.point(p);
                let v = &d.vertices()[p];
                let slots = d.sector_regions(p);
                let mut incoming = q(0);
                let mut region = q(0);
                let mut signs = Vec::new();
                for (k, (&h, &slot)) in v.darts.iter().zip(&slots).enumerate() {
                    if !d.dart(h).forward {
                        incoming += q(u.edge[&(p, k)]) * pow(idx.arcs[d.dart(h).edge], 2);
                    }
                    region += q(u.region[&(p, k)]) * pow(phi.value(slot), 3);
                    signs.push(u.region[&(p, k)]);
                }
                assert_eq!(incoming, q(2) * i);
                assert_eq!(region, q(6) * i);
                signs.sort_unstable();
                assert_eq!(signs, vec![-1, -1, 1, 1]);
            }
        }
    }

    #[test]
    fn every_crossing_gets_an_epsilon() {
        for name in corpus::NAMES {
            let d = corpus::diagram(name).unwrap();
            let e = epsilon(&d, EpsilonConvention::Standard).unwrap();
            assert_eq!(e.len(), d.crossing_count());
            let o = epsilon(&d, EpsilonConvention::Opposite).unwrap();
            for (p, s) in &e {
                assert_eq!(o[p], -s);
            }
        }
    }

    #[test]
    fn mirror_negates_epsilon() {
        for name in corpus::NAMES {
            let d = corpus::diagram(name).unwrap();
            let m = d.mirrored();
            for l in d.outer_arcs() {
                let e = d.dart(d.dart_index(l).unwrap()).edge;
                let em = m.dart(m.dart_index(l).unwrap()).edge;
                let a = epsilon_at(&d, e, EpsilonConvention::Standard).unwrap();
                let b = epsilon_at(&m, em, EpsilonConvention::Standard).unwrap();
                for (p, s) in a {
                    assert_eq!(b[&p], -s, "{name}");
                }
            }
        }
    }

    #[test]
    fn gleams_cancel_locally() {
        for name in corpus::NAMES {
            let (d, phi, _) = setup(name);
            let eps = epsilon(&d, EpsilonConvention::Standard).unwrap();
            let t = gleams(&d, &phi, &eps);
            for p in d.crossings() {
                let s: Q = (0..4).map(|k| t.gleam_local[&(p, k)]).sum();
                assert_eq!(s, q(0));
            }
            assert_eq!(t.gleam.iter().copied().sum::<Q>(), q(0));
            // flipping ε negates every local gleam
            let flipped: BTreeMap<usize, i64> = eps.iter().map(|(&p, &s)| (p, -s)).collect();
            let tf = gleams(&d, &phi, &flipped);
            for (k, g) in &t.gleam_local {
                assert_eq!(tf.gleam_local[k], -g);
            }
        }
    }

    #[test]
    fn twisted_edges_differ_by_epsilon() {
        for name in corpus::NAMES {
            let (d, phi, idx) = setup(name);
            let eps = epsilon(&d, EpsilonConvention::Standard).unwrap();
            let t = gleams(&d, &phi, &eps);
            for (ei, e) in d.edges().iter().enumerate() {
                let p = d.dart(e.backward).vertex;
                if let Some(&s) = eps.get(&p) {
                    assert_eq!(t.edge[ei], s * germ_index_sign(&d, &idx, p, e.backward));
                }
            }
        }
    }

    #[test]
    fn base_must_border_outer_face() {
        let d = corpus::diagram("one-kink").unwrap();
        let outer: Vec<u32> = d.outer_arcs();
        for (ei, e) in d.edges().iter().enumerate() {
            let ok = outer.contains(&d.dart(e.forward).label);
            assert_eq!(epsilon_at(&d, ei, EpsilonConvention::Standard).is_ok(), ok);
        }
    }

    #[test]
    fn convention_parses() {
        assert_eq!(
            "standard".parse::<EpsilonConvention>().unwrap(),
            EpsilonConvention::Standard
        );
        assert!("sideways".parse::<EpsilonConvention>().is_err());
    }
}
