//! The cubical neighbourhood of a surface triple point: three coordinate
//! planes cutting a ball into 8 octants, 12 quarter-sheets and 6 double-line
//! germs, with the local maps d¹, d², d³.

use std::collections::BTreeMap;
use std::fmt;

use crate::findiff::normalization;
use crate::rational::{half, pow, q, Q};

/// A sign vector in {±1}³.
pub type Signs3 = [i64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Octant {
    pub s: Signs3,
    pub value: Q,
}

/// Quarter of the coordinate plane normal to `axis`, in the quadrant
/// `(sa, sb)` of the two remaining axes (in increasing order).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sheet {
    pub axis: usize,
    pub quadrant: (i64, i64),
    pub index: Q,
    pub sign: i64,
}

/// Half of a double line: the `dir` side of coordinate axis `axis`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Germ {
    pub axis: usize,
    pub dir: i64,
    pub index: Q,
    /// +1 pointing away from the triple point, -1 toward it
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePointBall {
    pub x: Q,
    pub octants: Vec<Octant>,
    pub sheets: Vec<Sheet>,
    pub germs: Vec<Germ>,
    /// s(t)
    pub point_sign: i64,
}

fn other_axes(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

const PM: [i64; 2] = [1, -1];

pub fn build_ball(x: Q) -> TriplePointBall {
    let mut octants = Vec::with_capacity(8);
    for a in PM {
        for b in PM {
            for c in PM {
                octants.push(Octant {
                    s: [a, b, c],
                    value: x + half(a + b + c),
                });
            }
        }
    }
    let mut sheets = Vec::with_capacity(12);
    for axis in 0..3 {
        for sa in PM {
            for sb in PM {
                let (i, j) = other_axes(axis);
                let adj: Vec<Q> = octants
                    .iter()
                    .filter(|o| o.s[i] == sa && o.s[j] == sb)
                    .map(|o| o.value)
                    .collect();
                // boundary germs on axes i and j point away iff their side is +
                let same = sa == sb;
                sheets.push(Sheet {
                    axis,
                    quadrant: (sa, sb),
                    index: (adj[0] + adj[1]) / q(2),
                    sign: if same { 1 } else { -1 },
                });
            }
        }
    }
    let mut germs = Vec::with_capacity(6);
    for axis in 0..3 {
        for dir in PM {
            let adj: Q = octants
                .iter()
                .filter(|o| o.s[axis] == dir)
                .map(|o| o.value)
                .sum();
            // lines run toward increasing index, so the + side leaves t
            germs.push(Germ {
                axis,
                dir,
                index: adj / q(4),
                sign: dir,
            });
        }
    }
    TriplePointBall {
        x,
        octants,
        sheets,
        germs,
        point_sign: 1,
    }
}

impl TriplePointBall {
    /// ind(t): the average over the 8 octants.
    pub fn index(&self) -> Q {
        self.octants.iter().map(|o| o.value).sum::<Q>() / q(8)
    }

    /// Sheets bounding an octant, one per plane.
    pub fn bounding_sheets(&self, o: &Octant) -> Vec<&Sheet> {
        self.sheets
            .iter()
            .filter(|f| {
                let (i, j) = other_axes(f.axis);
                f.quadrant == (o.s[i], o.s[j])
            })
            .collect()
    }

    /// Region sign as the product of the three bounding sheet signs. Each
    /// octant sign appears squared in it, so this is +1 everywhere.
    pub fn product_rule_sign(&self, o: &Octant) -> i64 {
        self.bounding_sheets(o).iter().map(|f| f.sign).product()
    }

    /// Region sign used by d³: the parity `s1 s2 s3` of the cube vertex.
    pub fn region_sign(&self, o: &Octant) -> i64 {
        o.s.iter().product()
    }

    /// Region-sign coefficients grouped by octant value, highest value first.
    pub fn region_coefficients(&self) -> Vec<(Q, i64)> {
        let mut by: BTreeMap<Q, i64> = BTreeMap::new();
        for o in &self.octants {
            *by.entry(o.value).or_insert(0) += self.region_sign(o);
        }
        by.into_iter().rev().collect()
    }

    /// Octant values, sorted.
    pub fn value_multiset(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.octants.iter().map(|o| o.value).collect();
        v.sort();
        v
    }
}

/// The sorted octant pattern `{x-3/2, (x-1/2)×3, (x+1/2)×3, x+3/2}`.
pub fn octant_pattern(x: Q) -> Vec<Q> {
    build_ball(x).value_multiset()
}

/// The `x` whose octant pattern is `values`, if any.
pub fn fit_pattern(values: &[Q]) -> Option<Q> {
    if values.len() != 8 {
        return None;
    }
    let x = values.iter().sum::<Q>() / q(8);
    let mut v = values.to_vec();
    v.sort();
    (v == octant_pattern(x)).then_some(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    Point,
    Edge,
    Face,
    Region,
    Stokes,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Point => "point",
            Level::Edge => "edge",
            Level::Face => "face",
            Level::Region => "region",
            Level::Stokes => "stokes",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub level: Level,
    pub raw: Q,
    pub normalization: Q,
    pub value: Q,
    pub expected: Q,
}

impl LevelCheck {
    fn new(level: Level, raw: Q, normalization: Q, expected: Q) -> Self {
        LevelCheck {
            level,
            raw,
            normalization,
            value: raw * normalization,
            expected,
        }
    }

    pub fn pass(&self) -> bool {
        self.value == self.expected
    }
}

pub fn d1_surface_eval(b: &TriplePointBall) -> LevelCheck {
    let raw = b.germs.iter().map(|g| q(g.sign) * pow(g.index, 2)).sum();
    LevelCheck::new(Level::Edge, raw, normalization(1, 3), b.x)
}

pub fn d2_surface_eval(b: &TriplePointBall) -> LevelCheck {
    let raw = b.sheets.iter().map(|f| q(f.sign) * pow(f.index, 3)).sum();
    LevelCheck::new(Level::Face, raw, normalization(2, 3), b.x)
}

pub fn d3_surface_eval(b: &TriplePointBall) -> LevelCheck {
    let raw = b
        .octants
        .iter()
        .map(|o| q(b.region_sign(o)) * pow(o.value, 4))
        .sum();
    LevelCheck::new(Level::Region, raw, normalization(3, 1), b.x)
}

/// `(1/24) d³ = (1/18) d² = x`; `raw` holds the d³ side, `value` the common
/// value when both sides agree.
pub fn check_stokes_surface(b: &TriplePointBall) -> LevelCheck {
    let d2 = d2_surface_eval(b);
    let d3 = d3_surface_eval(b);
    let mut c = d3;
    c.level = Level::Stokes;
    if d2.value != d3.value {
        // make the mismatch visible in the report
        c.expected = d2.value;
    }
    c
}

/// All checks for one ball: point, edge, face, region, stokes.
pub fn level_checks(b: &TriplePointBall) -> Vec<LevelCheck> {
    vec![
        LevelCheck::new(Level::Point, q(b.point_sign) * b.index(), q(1), b.x),
        d1_surface_eval(b),
        d2_surface_eval(b),
        d3_surface_eval(b),
        check_stokes_surface(b),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceTotals {
    pub point: Q,
    pub edge: Q,
    pub face: Q,
    pub region: Q,
}

impl SurfaceTotals {
    pub fn pass(&self) -> bool {
        self.point == self.edge && self.edge == self.face && self.face == self.region
    }
}

pub fn shumakovitch_surface(balls: &[TriplePointBall]) -> SurfaceTotals {
    let mut t = SurfaceTotals {
        point: q(0),
        edge: q(0),
        face: q(0),
        region: q(0),
    };
    for b in balls {
        t.point += q(b.point_sign) * b.index();
        t.edge += d1_surface_eval(b).value;
        t.face += d2_surface_eval(b).value;
        t.region += d3_surface_eval(b).value;
    }
    t
}

/// Half-integers `k/2` for `k` in `-range..=range`.
pub fn sweep_values(range: i64) -> impl Iterator<Item = Q> {
    (-range..=range).map(half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn octant_values() {
        let b = build_ball(half(1));
        let want = vec![q(-1), q(0), q(0), q(0), q(1), q(1), q(1), q(2)];
        assert_eq!(b.value_multiset(), want);
        let b = build_ball(half(-3));
        assert_eq!(
            b.value_multiset(),
            vec![q(-3), q(-2), q(-2), q(-2), q(-1), q(-1), q(-1), q(0)]
        );
        assert_eq!(b.index(), half(-3));
    }

    #[test]
    fn cell_counts_and_signs() {
        let b = build_ball(half(1));
        assert_eq!((b.octants.len(), b.sheets.len(), b.germs.len()), (8, 12, 6));
        assert_eq!(b.sheets.iter().filter(|f| f.sign == 1).count(), 6);
        // a sheet between the x+3/2 and x+1/2 octants has index x+1
        let top = b.sheets.iter().find(|f| f.quadrant == (1, 1)).unwrap();
        assert_eq!(top.index, half(3));
        for o in &b.octants {
            assert_eq!(b.bounding_sheets(o).len(), 3);
        }
    }

    #[test]
    fn documented_level_values() {
        let b = build_ball(half(1));
        assert_eq!(d1_surface_eval(&b).raw, q(3));
        assert_eq!(d2_surface_eval(&b).raw, q(9));
        assert_eq!(d3_surface_eval(&b).raw, q(12));
        assert_eq!(d1_surface_eval(&build_ball(half(5))).raw, q(15));
        assert_eq!(d2_surface_eval(&build_ball(half(-3))).raw, q(-27));
        assert_eq!(d3_surface_eval(&build_ball(half(3))).raw, q(36));
        for c in level_checks(&b) {
            assert!(c.pass(), "{}", c.level);
            assert_eq!(c.value, half(1));
        }
    }

    #[test]
    fn region_sign_pattern() {
        let b = build_ball(half(1));
        let coeffs: Vec<i64> = b.region_coefficients().into_iter().map(|c| c.1).collect();
        assert_eq!(coeffs, vec![1, -3, 3, -1]);
        // the product of sheet signs cannot tell octants apart
        assert!(b.octants.iter().all(|o| b.product_rule_sign(o) == 1));
    }

    #[test]
    fn totals() {
        let empty = shumakovitch_surface(&[]);
        assert_eq!(empty.point, q(0));
        let one = shumakovitch_surface(&[build_ball(half(1))]);
        assert!(one.pass());
        assert_eq!(one.region, half(1));
        let pair = shumakovitch_surface(&[build_ball(half(1)), build_ball(half(-1))]);
        assert!(pair.pass());
        assert_eq!(pair.edge, q(0));
    }

    #[test]
    fn fitting() {
        assert_eq!(fit_pattern(&octant_pattern(half(7))), Some(half(7)));
        let mut bad = octant_pattern(half(1));
        bad[0] = q(5);
        assert_eq!(fit_pattern(&bad), None);
    }

    proptest! {
        #[test]
        fn all_levels_equal_x(k in -200i64..200) {
            let b = build_ball(half(k));
            for c in level_checks(&b) {
                prop_assert!(c.pass());
            }
        }

        #[test]
        fn flip_negates(k in -80i64..80) {
            let a = shumakovitch_surface(&[build_ball(half(k))]);
            let b = shumakovitch_surface(&[build_ball(half(-k))]);
            prop_assert_eq!((a.point, a.edge, a.face, a.region), (-b.point, -b.edge, -b.face, -b.region));
        }
    }
}
