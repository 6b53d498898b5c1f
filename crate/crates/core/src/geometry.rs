//! Closed polylines in the plane: conversion to diagrams and a ray-casting
//! winding-number oracle for the Alexander numbering.
//!
//! Coordinates are integers; intersections and sample points are exact.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::diagram::{CurveDiagram, OuterSpec, RawDiagram};
use crate::error::{Error, Result};

pub type R = Ratio<i128>;
pub type Pt = (R, R);

fn r(n: i64) -> R {
    R::from_integer(i128::from(n))
}

fn pt(p: (i64, i64)) -> Pt {
    (r(p.0), r(p.1))
}

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Pt, b: Pt) -> R {
    a.0 * b.1 - a.1 * b.0
}

fn lerp(a: Pt, b: Pt, t: R) -> Pt {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

fn zero() -> R {
    R::from_integer(0)
}

fn one() -> R {
    R::from_integer(1)
}

/// Proper intersection parameters `(t, u)` of segments `ab` and `pq`.
fn intersect(a: Pt, b: Pt, p: Pt, q: Pt) -> Result<Option<(R, R)>> {
    let d = cross(sub(b, a), sub(q, p));
    if d == zero() {
        if cross(sub(b, a), sub(p, a)) == zero() {
            // collinear: any overlap is degenerate
            let proj = |x: Pt| {
                let v = sub(b, a);
                (sub(x, a).0 * v.0 + sub(x, a).1 * v.1) / (v.0 * v.0 + v.1 * v.1)
            };
            let (s0, s1) = (proj(p), proj(q));
            let (lo, hi) = if s0 < s1 { (s0, s1) } else { (s1, s0) };
            if hi >= zero() && lo <= one() {
                return Err(Error::Invalid("collinear overlapping segments".into()));
            }
        }
        return Ok(None);
    }
    let t = cross(sub(p, a), sub(q, p)) / d;
    let u = cross(sub(p, a), sub(b, a)) / d;
    if t < zero() || t > one() || u < zero() || u > one() {
        return Ok(None);
    }
    Ok(Some((t, u)))
}

/// A diagram built from a polyline, with a sample point just to the left of
/// every dart.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub points: Vec<(i64, i64)>,
    pub diagram: CurveDiagram,
    pub left_samples: BTreeMap<u32, Pt>,
}

struct Occurrence {
    seg: usize,
    t: R,
    crossing: usize,
    out_dart: u32,
    in_dart: u32,
}

/// Build the diagram of a closed polyline in general position (transverse
/// double points in segment interiors, no triple points).
pub fn polyline_to_diagram(name: &str, points: &[(i64, i64)]) -> Result<Embedded> {
    let n = points.len();
    if n < 3 {
        return Err(Error::Invalid(
            "a closed polyline needs at least 3 points".into(),
        ));
    }
    let p: Vec<Pt> = points.iter().map(|&x| pt(x)).collect();
    let seg = |i: usize| (p[i], p[(i + 1) % n]);
    for i in 0..n {
        if p[i] == p[(i + 1) % n] {
            return Err(Error::Invalid(format!("repeated point at index {i}")));
        }
    }

    // raw crossings: (seg i, t, seg j, u)
    let mut raw_x: Vec<(usize, R, usize, R)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            match intersect(a, b, c, d)? {
                None => {}
                // adjacent segments share their common endpoint
                Some(_) if adjacent => {}
                Some((t, u)) => {
                    let interior = |x: R| x > zero() && x < one();
                    if !interior(t) || !interior(u) {
                        return Err(Error::Invalid(format!(
                            "segments {i} and {j} meet at a polyline vertex"
                        )));
                    }
                    raw_x.push((i, t, j, u));
                }
            }
        }
    }
    let mut spots: Vec<Pt> = raw_x
        .iter()
        .map(|&(i, t, _, _)| lerp(seg(i).0, seg(i).1, t))
        .collect();
    spots.sort();
    if spots.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Invalid("three branches through one point".into()));
    }

    let mut occ: Vec<Occurrence> = Vec::new();
    for (c, &(i, t, j, u)) in raw_x.iter().enumerate() {
        for (s, par) in [(i, t), (j, u)] {
            occ.push(Occurrence {
                seg: s,
                t: par,
                crossing: c,
                out_dart: 0,
                in_dart: 0,
            });
        }
    }
    occ.sort_by_key(|a| (a.seg, a.t));

    let mut raw = RawDiagram::new(name);
    let mut left_samples = BTreeMap::new();

    // a point strictly inside the arc leaving occurrence m (or the whole curve)
    let arc_point = |from: Option<(usize, R)>, to: Option<(usize, R)>| -> (Pt, Pt) {
        let (s, t0) = from.unwrap_or((0, zero()));
        let t1 = match to {
            Some((s2, t)) if s2 == s && t > t0 => t,
            _ => one(),
        };
        let (a, b) = seg(s);
        (lerp(a, b, (t0 + t1) / R::from_integer(2)), sub(b, a))
    };

    if occ.is_empty() {
        raw.vertices.insert(0, vec![0, 1]);
        raw.set_twin(0, 1);
        raw.forward.insert(0);
        let (m, dir) = arc_point(None, None);
        left_samples.insert(0, offset(&p, m, dir, 1));
        left_samples.insert(1, offset(&p, m, dir, -1));
        let w = if lowest_turn_is_ccw(&p) { 1 } else { 0 };
        raw.outers.push(OuterSpec {
            witness: w,
            host: None,
        });
        let diagram = CurveDiagram::from_raw(raw)?;
        return Ok(Embedded {
            points: points.to_vec(),
            diagram,
            left_samples,
        });
    }

    // relabel crossings by first occurrence along the curve
    let mut label: BTreeMap<usize, usize> = BTreeMap::new();
    for o in &occ {
        let next = label.len();
        label.entry(o.crossing).or_insert(next);
    }
    let mut passes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (m, o) in occ.iter().enumerate() {
        passes.entry(label[&o.crossing]).or_default().push(m);
    }
    for (&c, ms) in &passes {
        let (ma, mb) = (ms[0], ms[1]);
        let dir = |m: usize| {
            let (a, b) = seg(occ[m].seg);
            sub(b, a)
        };
        let base = 4 * c as u32;
        // ccw positions of out_a, out_b, in_a, in_b
        let (oa, ob, ia, ib) = if cross(dir(ma), dir(mb)) > zero() {
            (0, 1, 2, 3)
        } else {
            (0, 3, 2, 1)
        };
        occ[ma].out_dart = base + oa;
        occ[ma].in_dart = base + ia;
        occ[mb].out_dart = base + ob;
        occ[mb].in_dart = base + ib;
        raw.vertices
            .insert(c as u32, (0..4).map(|k| base + k).collect());
    }
    let k = occ.len();
    for m in 0..k {
        let nx = (m + 1) % k;
        raw.set_twin(occ[m].out_dart, occ[nx].in_dart);
        raw.forward.insert(occ[m].out_dart);
        let (mid, dir) = arc_point(Some((occ[m].seg, occ[m].t)), Some((occ[nx].seg, occ[nx].t)));
        left_samples.insert(occ[m].out_dart, offset(&p, mid, dir, 1));
        left_samples.insert(occ[nx].in_dart, offset(&p, mid, dir, -1));
    }

    // the arc through the lowest polyline vertex borders the unbounded region
    let j = lowest_index(&p);
    let m = occ.iter().rposition(|o| o.seg < j).unwrap_or(k - 1);
    let witness = if lowest_turn_is_ccw(&p) {
        occ[(m + 1) % k].in_dart
    } else {
        occ[m].out_dart
    };
    raw.outers.push(OuterSpec {
        witness,
        host: None,
    });
    let diagram = CurveDiagram::from_raw(raw)?;
    Ok(Embedded {
        points: points.to_vec(),
        diagram,
        left_samples,
    })
}

fn lowest_index(p: &[Pt]) -> usize {
    (0..p.len())
        .min_by(|&a, &b| (p[a].1, p[a].0).cmp(&(p[b].1, p[b].0)))
        .expect("non-empty")
}

fn lowest_turn_is_ccw(p: &[Pt]) -> bool {
    let n = p.len();
    let j = lowest_index(p);
    let u = sub(p[j], p[(j + n - 1) % n]);
    let w = sub(p[(j + 1) % n], p[j]);
    cross(u, w) > zero()
}

/// A point at a small distance from `m` along the left (`side = 1`) or right
/// normal of `dir`, close enough that the offset crosses no segment.
fn offset(p: &[Pt], m: Pt, dir: Pt, side: i64) -> Pt {
    let normal = (-dir.1 * r(side), dir.0 * r(side));
    let mut eps = R::new(1, 64);
    loop {
        let cand = (m.0 + normal.0 * eps, m.1 + normal.1 * eps);
        let n = p.len();
        let blocked = (0..n).any(|i| {
            let (a, b) = (p[i], p[(i + 1) % n]);
            // the segment carrying m is touched at t = 0 only
            matches!(intersect(m, cand, a, b), Ok(Some((t, _))) if t > zero())
                || intersect(m, cand, a, b).is_err()
        });
        if !blocked {
            return cand;
        }
        eps /= R::from_integer(2);
    }
}

/// Winding number of the closed polyline around `q` (which must not lie on it):
/// upward crossings of the rightward ray count +1, downward ones -1.
pub fn winding_number(points: &[(i64, i64)], q: Pt) -> i64 {
    let p: Vec<Pt> = points.iter().map(|&x| pt(x)).collect();
    let n = p.len();
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (p[i], p[(i + 1) % n]);
        let side = cross(sub(b, a), sub(q, a));
        if a.1 <= q.1 && b.1 > q.1 && side > zero() {
            w += 1;
        } else if b.1 <= q.1 && a.1 > q.1 && side < zero() {
            w -= 1;
        }
    }
    w
}

/// Winding number on the left of every dart, keyed by dart label.
pub fn numbering_oracle(e: &Embedded) -> BTreeMap<u32, i64> {
    e.left_samples
        .iter()
        .map(|(&h, &s)| (h, winding_number(&e.points, s)))
        .collect()
}
