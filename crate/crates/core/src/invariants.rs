//! St₍₁₎ and the original St at the point, edge and region levels.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alexander::{cell_indices, compute_alexander, AlexanderCochain, Convention};
use crate::derham::{d1_boundary_eval, d2_curve, GermRule};
use crate::diagram::CurveDiagram;
use crate::error::Result;
use crate::findiff::normalization;
use crate::rational::{half, pow, q, Q};
use crate::signs::{epsilon_at, gleams, EpsilonConvention, TwistedSigns};

/// Three values of one invariant family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Levels {
    pub point: Q,
    pub edge: Q,
    pub region: Q,
}

impl Levels {
    pub fn pass(&self) -> bool {
        self.point == self.edge && self.edge == self.region
    }
}

pub fn st1(d: &CurveDiagram, phi: &AlexanderCochain) -> Levels {
    let idx = cell_indices(d, phi);
    let mut l = Levels {
        point: q(0),
        edge: q(0),
        region: q(0),
    };
    for p in d.crossings() {
        l.point += idx.point(p);
        l.edge += d1_boundary_eval(d, &idx, p, GermRule::Incoming);
        l.region += d2_curve(d, phi, p);
    }
    l.edge *= normalization(1, 1);
    l.region *= normalization(2, 1);
    l
}

pub fn st_original(d: &CurveDiagram, phi: &AlexanderCochain, t: &TwistedSigns) -> Levels {
    let idx = cell_indices(d, phi);
    let point = t.epsilon.iter().map(|(&p, &e)| q(e) * idx.point(p)).sum();
    let edge: Q = t
        .edge
        .iter()
        .zip(&idx.arcs)
        .map(|(&s, &i)| q(s) * pow(i, 2))
        .sum();
    let region: Q = t
        .gleam
        .iter()
        .zip(&phi.values)
        .map(|(&g, &v)| g * pow(v, 3))
        .sum();
    Levels {
        point,
        edge: half(1) * edge,
        region: Q::new(1, 3) * region,
    }
}

/// One double point's contribution at each level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRow {
    pub vertex_label: u32,
    pub epsilon: i64,
    pub ind: Q,
    pub point: Q,
    pub edge: Q,
    pub region: Q,
}

impl LedgerRow {
    pub fn pass(&self) -> bool {
        let want = q(self.epsilon) * self.ind;
        self.point == want && self.edge == want && self.region == want
    }
}

/// Per-vertex contributions, computed from the local slot and germ values
/// actually present at each double point.
pub fn per_vertex_ledger(
    d: &CurveDiagram,
    phi: &AlexanderCochain,
    t: &TwistedSigns,
) -> Vec<LedgerRow> {
    let idx = cell_indices(d, phi);
    t.epsilon
        .iter()
        .map(|(&p, &e)| {
            let i = idx.point(p);
            let v = &d.vertices()[p];
            let edge: Q = v
                .darts
                .iter()
                .filter(|&&h| !d.dart(h).forward)
                .map(|&h| {
                    let ei = d.dart(h).edge;
                    q(t.edge[ei]) * pow(idx.arcs[ei], 2)
                })
                .sum();
            let region: Q = d
                .sector_regions(p)
                .iter()
                .enumerate()
                .map(|(k, &r)| t.gleam_local[&(p, k)] * pow(phi.value(r), 3))
                .sum();
            LedgerRow {
                vertex_label: v.label,
                epsilon: e,
                ind: i,
                point: q(e) * i,
                edge: half(1) * edge,
                region: Q::new(1, 3) * region,
            }
        })
        .collect()
}

/// Closed-form ledger entries `ε i`, `½ε[(i+½)² − (i−½)²]` and
/// `⅓(ε/2)[(i+1)³ + (i−1)³ − 2i³]`.
pub fn ledger_formula(epsilon: i64, i: Q) -> (Q, Q, Q) {
    let e = q(epsilon);
    let point = e * i;
    let edge = half(1) * e * (pow(i + half(1), 2) - pow(i - half(1), 2));
    let region =
        Q::new(1, 3) * (e / q(2)) * (pow(i + q(1), 3) + pow(i - q(1), 3) - q(2) * pow(i, 3));
    (point, edge, region)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub diagram: String,
    pub st1: Levels,
    pub st: Levels,
    pub base_label: Option<u32>,
    /// St for every base arc on the unbounded region, by forward dart label
    pub base_sweep: BTreeMap<u32, Q>,
    pub ledger: Vec<LedgerRow>,
}

impl InvariantReport {
    pub fn base_invariant(&self) -> bool {
        let mut vals = self.base_sweep.values();
        match vals.next() {
            None => true,
            Some(first) => vals.all(|v| v == first),
        }
    }

    pub fn pass(&self) -> bool {
        self.st1.pass()
            && self.st.pass()
            && self.base_invariant()
            && self.ledger.iter().all(LedgerRow::pass)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let flag = |b: bool| if b { "pass" } else { "FAIL" };
        let _ = writeln!(s, "# invariants {}", self.diagram);
        let _ = writeln!(
            s,
            "st1 point={} edge={} region={} {}",
            self.st1.point,
            self.st1.edge,
            self.st1.region,
            flag(self.st1.pass())
        );
        let _ = writeln!(
            s,
            "st point={} edge={} region={} {}",
            self.st.point,
            self.st.edge,
            self.st.region,
            flag(self.st.pass())
        );
        for (b, v) in &self.base_sweep {
            let _ = writeln!(s, "st-base {b} {v}");
        }
        let _ = writeln!(s, "st-base-invariant {}", flag(self.base_invariant()));
        for r in &self.ledger {
            let _ = writeln!(
                s,
                "ledger {} eps={} ind={} point={} edge={} region={} {}",
                r.vertex_label,
                r.epsilon,
                r.ind,
                r.point,
                r.edge,
                r.region,
                flag(r.pass())
            );
        }
        s
    }
}

fn st_for_base(
    d: &CurveDiagram,
    phi: &AlexanderCochain,
    edge: usize,
    conv: EpsilonConvention,
) -> Result<(Levels, TwistedSigns)> {
    let eps = epsilon_at(d, edge, conv)?;
    let t = gleams(d, phi, &eps);
    Ok((st_original(d, phi, &t), t))
}

/// Both families, the base-arc sweep and the ledger. The original St needs
/// a single closed strand.
pub fn invariant_report(d: &CurveDiagram, conv: EpsilonConvention) -> Result<InvariantReport> {
    d.require_single_strand()?;
    let phi = compute_alexander(d, Convention::Curve)?;
    let s1 = st1(d, &phi);
    let mut outer = d.outer_arcs();
    outer.sort_unstable();
    let base_edge = match d.base_edge() {
        Some(e) => e,
        None => d.dart(d.dart_index(outer[0]).expect("outer arc")).edge,
    };
    let (st, t) = st_for_base(d, &phi, base_edge, conv)?;
    let ledger = per_vertex_ledger(d, &phi, &t);
    let mut base_sweep = BTreeMap::new();
    for l in outer {
        let e = d.dart(d.dart_index(l).expect("outer arc")).edge;
        base_sweep.insert(l, st_for_base(d, &phi, e, conv)?.0.point);
    }
    Ok(InvariantReport {
        diagram: d.name().to_string(),
        st1: s1,
        st,
        base_label: Some(d.dart(d.edges()[base_edge].forward).label),
        base_sweep,
        ledger,
    })
}
