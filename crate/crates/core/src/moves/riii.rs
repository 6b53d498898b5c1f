//! The triangle move. Twins and orientations are unchanged: only the three
//! cyclic orders are rewritten, read off a small straight-line model of
//! three lines crossing near a common point.

use std::cmp::Ordering;

use super::{host_spec_free, index, Repair};
use crate::diagram::{CurveDiagram, VertexKind};
use crate::error::{Error, Result};
use crate::rational::{q, Q};

type V2 = (Q, Q);

fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: V2, b: V2) -> Q {
    a.0 * b.1 - a.1 * b.0
}

/// Counterclockwise angular order starting at the positive x axis.
fn angle_cmp(a: V2, b: V2) -> Ordering {
    let half = |v: V2| {
        if v.1 > q(0) || (v.1 == q(0) && v.0 > q(0)) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| q(0).cmp(&cross(a, b)))
}

/// Legs `P0..P5` counterclockwise on a hexagon; line `k` joins `P(2k)` and
/// `P(2k+3)` and is pushed off the centre by `s/2` along its left normal.
fn lines(s: i64) -> [(V2, V2); 3] {
    let p = [(-4, 0), (-2, -3), (2, -3), (4, 0), (2, 3), (-2, 3)].map(|(x, y)| (q(x), q(y)));
    std::array::from_fn(|k| {
        let a = p[2 * k];
        let b = p[(2 * k + 3) % 6];
        let dir = sub(b, a);
        let n = (-dir.1, dir.0);
        let t = Q::new(s, 2);
        let off = (n.0 * t, n.1 * t);
        ((a.0 + off.0, a.1 + off.1), dir)
    })
}

/// Parameter along line `j` of its meeting point with line `k`.
fn meet(l: &[(V2, V2); 3], j: usize, k: usize) -> Q {
    let ((pj, dj), (pk, dk)) = (l[j], l[k]);
    cross(sub(pk, pj), dk) / cross(dj, dk)
}

/// Darts around a triangular face: its corners (vertex labels), the six
/// legs counterclockwise, the triangle's own darts and their twins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleSite {
    pub corners: [u32; 3],
    pub legs: [u32; 6],
    pub inward: [u32; 3],
    pub outward: [u32; 3],
}

pub fn triangle_site(d: &CurveDiagram, dart: u32) -> Result<TriangleSite> {
    let h0 = index(d, dart)?;
    let face = d.dart(h0).face;
    if d.faces()[face].darts.len() != 3 {
        return Err(Error::InvalidSite(format!(
            "dart {dart} does not bound a triangle"
        )));
    }
    let next = |h: usize| d.dart(d.dart(h).twin).ccw_prev;
    let h = [h0, next(h0), next(next(h0))];
    let v = h.map(|x| d.dart(x).vertex);
    if v[0] == v[1] || v[1] == v[2] || v[0] == v[2] {
        return Err(Error::InvalidSite(
            "triangle corners are not distinct".into(),
        ));
    }
    if v.iter()
        .any(|&x| d.vertices()[x].kind != VertexKind::Crossing)
    {
        return Err(Error::InvalidSite(
            "triangle corner is not a double point".into(),
        ));
    }
    if !host_spec_free(d, face) {
        return Err(Error::InvalidSite(
            "the triangle is an outer face or encloses components".into(),
        ));
    }
    let label = |i: usize| d.dart(i).label;
    // legs at corner k: x continues h[k] backwards, y continues h[k-1] forwards
    let mut legs = [0u32; 6];
    for k in 0..3 {
        let x = d.dart(d.dart(h[(k + 2) % 3]).twin).ccw_next;
        legs[2 * k] = label(x);
        legs[2 * k + 1] = label(d.dart(x).ccw_next);
    }
    Ok(TriangleSite {
        corners: v.map(|x| d.vertices()[x].label),
        legs,
        inward: h.map(label),
        outward: h.map(|x| label(d.dart(x).twin)),
    })
}

/// Apply the triangle move at the triangle on the left of `dart`. The new
/// triangle lies on the left of the old triangle darts' twins.
pub fn riii(d: &CurveDiagram, dart: u32) -> Result<CurveDiagram> {
    let TriangleSite {
        corners,
        legs,
        inward,
        outward,
    } = triangle_site(d, dart)?;

    // the new configuration meets line 1 before line 2 along line 0
    let l = [1, -1]
        .into_iter()
        .map(lines)
        .find(|l| meet(l, 0, 1) < meet(l, 0, 2))
        .expect("one shift reverses the order");
    let corner = |a: usize, b: usize| match (a.min(b), a.max(b)) {
        (0, 2) => 0,
        (0, 1) => 1,
        _ => 2,
    };
    let mut rings: [Vec<(V2, u32)>; 3] = Default::default();
    for m in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&k| k != m).collect();
        let (near, far) = if meet(&l, m, others[0]) < meet(&l, m, others[1]) {
            (others[0], others[1])
        } else {
            (others[1], others[0])
        };
        let dir = l[m].1;
        let back = (-dir.0, -dir.1);
        let cn = corner(m, near);
        let cf = corner(m, far);
        rings[cn].push((back, legs[2 * m]));
        rings[cn].push((dir, inward[m]));
        rings[cf].push((back, outward[m]));
        rings[cf].push((dir, legs[(2 * m + 3) % 6]));
    }
    let mut raw = d.raw().clone();
    for (k, mut ring) in rings.into_iter().enumerate() {
        ring.sort_by(|a, b| angle_cmp(a.0, b.0));
        raw.vertices
            .insert(corners[k], ring.into_iter().map(|(_, l)| l).collect());
    }
    // the far side of each triangle edge is the gap left of the next leg
    let mut rep = Repair::default();
    for k in 0..3 {
        let gap = legs[2 * k + 1];
        rep.rep.insert(outward[k], gap);
        rep.rep.insert(inward[k], gap);
    }
    rep.finish(d, raw)
}
