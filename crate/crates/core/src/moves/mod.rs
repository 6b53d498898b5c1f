//! Local moves on curve diagrams: births and deaths of circles, saddles,
//! Reidemeister moves of types II and III, and the kink used by the
//! random generator.
//!
//! Every move works on dart labels of the current diagram. New darts take
//! consecutive labels starting at the diagram's next free label, in the
//! order documented on each move.

mod repair;
mod riii;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::diagram::{CurveDiagram, OuterSpec, VertexKind};
use crate::error::{Error, Result};

pub use riii::{riii, triangle_site, TriangleSite};

use repair::Repair;

/// A move and its site.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// a new circle, counterclockwise unless `cw`, in the face left of `host`
    Birth { ccw: bool, host: Option<u32> },
    /// removal of the circle carrying dart `dart`
    Death { dart: u32 },
    /// band surgery between the arcs of `a` and `b`
    Saddle { a: u32, b: u32, keep: Option<u32> },
    /// a finger of the arc of `a` pushed across the arc of `b`
    RiiCreate { a: u32, b: u32, keep: Option<u32> },
    /// removal of the bigon on the left of `dart`
    RiiAnnihilate { dart: u32 },
    /// a strand pushed across the double point opposite the triangle left of `dart`
    Riii { dart: u32 },
    /// a small loop on the left of `dart`
    Kink { dart: u32 },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Birth { .. } => "birth",
            Move::Death { .. } => "death",
            Move::Saddle { .. } => "saddle",
            Move::RiiCreate { .. } => "rii-create",
            Move::RiiAnnihilate { .. } => "rii-annihilate",
            Move::Riii { .. } => "riii",
            Move::Kink { .. } => "kink",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind())?;
        match self {
            Move::Birth { ccw, host } => {
                if !ccw {
                    write!(f, " cw")?;
                }
                if let Some(h) = host {
                    write!(f, " in {h}")?;
                }
            }
            Move::Saddle { a, b, keep } | Move::RiiCreate { a, b, keep } => {
                write!(f, " {a} {b}")?;
                if let Some(k) = keep {
                    write!(f, " keep {k}")?;
                }
            }
            Move::Death { dart }
            | Move::RiiAnnihilate { dart }
            | Move::Riii { dart }
            | Move::Kink { dart } => write!(f, " {dart}")?,
        }
        Ok(())
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let bad = |m: &str| Error::Invalid(format!("move `{s}`: {m}"));
        let num = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| bad(&format!("`{t}` is not a dart label")))
        };
        let Some((&kind, rest)) = toks.split_first() else {
            return Err(bad("empty"));
        };
        let one = |rest: &[&str]| -> Result<u32> {
            match rest {
                [x] => num(x),
                _ => Err(bad("expected one dart label")),
            }
        };
        let pair = |rest: &[&str]| -> Result<(u32, u32, Option<u32>)> {
            match rest {
                [a, b] => Ok((num(a)?, num(b)?, None)),
                [a, b, "keep", k] => Ok((num(a)?, num(b)?, Some(num(k)?))),
                _ => Err(bad("expected `<dart> <dart> [keep <dart>]`")),
            }
        };
        Ok(match kind {
            "birth" => {
                let mut ccw = true;
                let mut host = None;
                let mut it = rest.iter();
                while let Some(&t) = it.next() {
                    match t {
                        "ccw" => ccw = true,
                        "cw" => ccw = false,
                        "in" => {
                            host = Some(num(it.next().ok_or_else(|| bad("`in` needs a dart"))?)?)
                        }
                        _ => return Err(bad(&format!("unexpected `{t}`"))),
                    }
                }
                Move::Birth { ccw, host }
            }
            "death" => Move::Death { dart: one(rest)? },
            "saddle" => {
                let (a, b, keep) = pair(rest)?;
                Move::Saddle { a, b, keep }
            }
            "rii-create" => {
                let (a, b, keep) = pair(rest)?;
                Move::RiiCreate { a, b, keep }
            }
            "rii-annihilate" => Move::RiiAnnihilate { dart: one(rest)? },
            "riii" => Move::Riii { dart: one(rest)? },
            "kink" => Move::Kink { dart: one(rest)? },
            _ => return Err(bad("unknown move")),
        })
    }
}

pub fn apply(d: &CurveDiagram, m: &Move) -> Result<CurveDiagram> {
    match *m {
        Move::Birth { ccw, host } => birth(d, ccw, host),
        Move::Death { dart } => death(d, dart),
        Move::Saddle { a, b, keep } => saddle(d, a, b, keep),
        Move::RiiCreate { a, b, keep } => rii_create(d, a, b, keep),
        Move::RiiAnnihilate { dart } => rii_annihilate(d, dart),
        Move::Riii { dart } => riii(d, dart),
        Move::Kink { dart } => kink(d, dart),
    }
}

fn index(d: &CurveDiagram, l: u32) -> Result<usize> {
    d.dart_index(l)
        .ok_or_else(|| Error::InvalidSite(format!("dart {l} does not exist")))
}

fn host_spec_free(d: &CurveDiagram, face: usize) -> bool {
    let comp = d.faces()[face].component;
    d.components()[comp].outer_face != face && !d.components().iter().any(|c| c.host == Some(face))
}

/// New circle. Its marker darts are `n` (forward) and `n+1`.
pub fn birth(d: &CurveDiagram, ccw: bool, host: Option<u32>) -> Result<CurveDiagram> {
    if let Some(h) = host {
        index(d, h)?;
    }
    let mut raw = d.raw().clone();
    let v = raw.next_vertex_label();
    let a = raw.next_dart_label();
    let b = a + 1;
    raw.vertices.insert(v, vec![a, b]);
    raw.set_twin(a, b);
    raw.forward.insert(a);
    // a counterclockwise circle has its inside on the left of the forward dart
    let witness = if ccw { b } else { a };
    raw.outers.push(OuterSpec { witness, host });
    CurveDiagram::from_raw(raw)
}

/// Remove the crossing-free circle through `dart`; its inside must be empty.
pub fn death(d: &CurveDiagram, dart: u32) -> Result<CurveDiagram> {
    let h = index(d, dart)?;
    let v = d.dart(h).vertex;
    let c = d.vertices()[v].component;
    let comp = &d.components()[c];
    if comp.crossings > 0 {
        return Err(Error::InvalidSite(format!(
            "dart {dart} lies on a component with double points"
        )));
    }
    let inner = *comp
        .faces
        .iter()
        .find(|&&f| f != comp.outer_face)
        .expect("circle has two faces");
    if d.components().iter().any(|k| k.host == Some(inner)) {
        return Err(Error::InvalidSite(format!(
            "the circle through dart {dart} still encloses other components"
        )));
    }
    let mut raw = d.raw().clone();
    let vl = d.vertices()[v].label;
    let darts = raw.vertices.remove(&vl).expect("vertex");
    let own = raw
        .outers
        .iter()
        .position(|o| darts.contains(&o.witness))
        .expect("placement");
    let own_host = raw.outers.remove(own).host;
    for o in &mut raw.outers {
        if o.host.is_some_and(|x| darts.contains(&x)) {
            o.host = own_host;
        }
    }
    for x in &darts {
        raw.twins.remove(x);
        raw.forward.remove(x);
    }
    if raw.base.is_some_and(|b| darts.contains(&b)) {
        raw.base = None;
    }
    CurveDiagram::from_raw(raw)
}

/// Saddle between the arcs of `a` and `b`, which must have the same region
/// on their left and the same orientation. Naming the same dart twice cuts
/// a single arc against itself; the arc is first split by a marker whose
/// darts take the next two labels.
pub fn saddle(d: &CurveDiagram, a: u32, b: u32, keep: Option<u32>) -> Result<CurveDiagram> {
    let ia = index(d, a)?;
    let mut raw = d.raw().clone();
    let mut rep = Repair::default();
    let fa = d.dart(ia).face;
    let b = if a == b {
        let t = raw.twins[&a];
        let v = raw.next_vertex_label();
        let na = raw.next_dart_label();
        let nb = na + 1;
        raw.vertices.insert(v, vec![na, nb]);
        raw.set_twin(a, na);
        raw.set_twin(nb, t);
        if d.dart(ia).forward {
            raw.forward.insert(nb);
        } else {
            raw.forward.insert(na);
        }
        rep.origin.insert(nb, BTreeSet::from([fa]));
        rep.origin
            .insert(na, BTreeSet::from([d.dart(d.dart(ia).twin).face]));
        nb
    } else {
        let ib = index(d, b)?;
        if d.left_region(ia) != d.left_region(ib) {
            return Err(Error::InvalidSite(format!(
                "darts {a} and {b} do not share the region on their left"
            )));
        }
        if d.dart(ia).forward != d.dart(ib).forward {
            return Err(Error::InvalidSite(format!(
                "darts {a} and {b} run in opposite directions along the region"
            )));
        }
        b
    };
    let face_of = |l: u32| -> usize {
        match d.dart_index(l) {
            Some(i) => d.dart(i).face,
            None => *rep.origin[&l].iter().next().expect("origin"),
        }
    };
    let (ta, tb) = (raw.twins[&a], raw.twins[&b]);
    let same_comp = d.faces()[fa].component == d.faces()[face_of(b)].component;
    if same_comp {
        rep.split_face = Some(fa);
        rep.keep = keep;
        let (qa, qb) = (face_of(ta), face_of(tb));
        if qa == qb {
            rep.shared_face = Some(qa);
        }
    }
    raw.set_twin(a, tb);
    raw.set_twin(b, ta);
    rep.finish(d, raw)
}

/// Push a finger of the arc of `a` across the arc of `b` through the region
/// on their left. New vertices `u`, `w` carry darts `n..n+4` and `n+4..n+8`:
/// `u = [b middle, tip, b end, a start]`, `w = [b start, tip, b middle, a end]`.
/// The new bigon lies on the left of dart `n`.
pub fn rii_create(d: &CurveDiagram, a: u32, b: u32, keep: Option<u32>) -> Result<CurveDiagram> {
    let ia = index(d, a)?;
    let ib = index(d, b)?;
    if ia == ib || d.dart(ia).twin == ib {
        return Err(Error::InvalidSite(format!(
            "darts {a} and {b} lie on the same arc"
        )));
    }
    if d.left_region(ia) != d.left_region(ib) {
        return Err(Error::InvalidSite(format!(
            "darts {a} and {b} do not share the region on their left"
        )));
    }
    let mut raw = d.raw().clone();
    let (ta, tb) = (raw.twins[&a], raw.twins[&b]);
    let (fa, fb) = (d.dart(ia).forward, d.dart(ib).forward);
    let u = raw.next_vertex_label();
    let w = u + 1;
    let n = raw.next_dart_label();
    let [u_bmid, u_tip, u_bend, u_astart] = [n, n + 1, n + 2, n + 3];
    let [w_bstart, w_tip, w_bmid, w_aend] = [n + 4, n + 5, n + 6, n + 7];
    raw.vertices
        .insert(u, vec![u_bmid, u_tip, u_bend, u_astart]);
    raw.vertices
        .insert(w, vec![w_bstart, w_tip, w_bmid, w_aend]);
    raw.set_twin(u_astart, a);
    raw.set_twin(w_aend, ta);
    raw.set_twin(u_tip, w_tip);
    raw.set_twin(w_bstart, b);
    raw.set_twin(u_bend, tb);
    raw.set_twin(w_bmid, u_bmid);
    for (l, fwd) in [
        (u_astart, !fa),
        (u_tip, fa),
        (w_tip, !fa),
        (w_aend, fa),
        (w_bstart, !fb),
        (w_bmid, fb),
        (u_bmid, !fb),
        (u_bend, fb),
    ] {
        if fwd {
            raw.forward.insert(l);
        } else {
            raw.forward.remove(&l);
        }
    }
    let mut rep = Repair::default();
    let face = d.dart(ia).face;
    if d.faces()[face].component == d.faces()[d.dart(ib).face].component {
        rep.split_face = Some(face);
        rep.keep = keep;
    }
    rep.finish(d, raw)
}

/// Remove the bigon on the left of `dart`. Strands closing up inside the
/// removed part become circles with fresh markers.
pub fn rii_annihilate(d: &CurveDiagram, dart: u32) -> Result<CurveDiagram> {
    let h = index(d, dart)?;
    let face = d.dart(h).face;
    let fd = &d.faces()[face].darts;
    if fd.len() != 2 {
        return Err(Error::InvalidSite(format!(
            "dart {dart} does not bound a bigon"
        )));
    }
    let g = fd.iter().copied().find(|&x| x != h).expect("two darts");
    let (u, w) = (d.dart(h).vertex, d.dart(g).vertex);
    if u == w
        || d.vertices()[u].kind != VertexKind::Crossing
        || d.vertices()[w].kind != VertexKind::Crossing
    {
        return Err(Error::InvalidSite(format!(
            "the face left of dart {dart} is not a bigon between two double points"
        )));
    }
    if !host_spec_free(d, face) {
        return Err(Error::InvalidSite(
            "the bigon is an outer face or encloses components".into(),
        ));
    }
    let tu = d.dart(d.opposite(h)).face;
    let tw = d.dart(d.opposite(g)).face;
    let label = |i: usize| d.dart(i).label;
    let removed: BTreeSet<usize> = d.vertices()[u]
        .darts
        .iter()
        .chain(&d.vertices()[w].darts)
        .copied()
        .collect();
    let mut raw = d.raw().clone();
    let mut rep = Repair::default();
    let mut done: BTreeSet<usize> = BTreeSet::new();
    let mut new_twins: Vec<(u32, u32)> = Vec::new();
    let survivors: Vec<usize> = (0..d.darts().len())
        .filter(|i| !removed.contains(i) && removed.contains(&d.dart(*i).twin))
        .collect();
    let note = |rep: &mut Repair, from: usize, to: u32| {
        rep.rep.insert(label(from), to);
        rep.origin.entry(to).or_default().insert(d.dart(from).face);
    };
    for &x in &survivors {
        if done.contains(&x) {
            continue;
        }
        let mut fwd = Vec::new();
        let mut back = Vec::new();
        let mut t = d.dart(x).twin;
        let y = loop {
            back.push(t);
            let p = d.opposite(t);
            fwd.push(p);
            let nx = d.dart(p).twin;
            if !removed.contains(&nx) {
                break nx;
            }
            t = nx;
        };
        done.insert(x);
        done.insert(y);
        new_twins.push((label(x), label(y)));
        for p in fwd {
            note(&mut rep, p, label(x));
        }
        for t in back {
            note(&mut rep, t, label(y));
        }
    }
    // closed loops entirely inside the removed part
    let mut covered: BTreeSet<usize> = rep.rep.keys().filter_map(|&l| d.dart_index(l)).collect();
    let mut next_vertex = raw.next_vertex_label();
    let mut next_dart = raw.next_dart_label();
    let mut circles = Vec::new();
    for &s in &removed {
        if covered.contains(&s) || !d.dart(s).forward {
            continue;
        }
        let (m0, m1) = (next_dart, next_dart + 1);
        next_dart += 2;
        let mut cur = s;
        loop {
            covered.insert(cur);
            covered.insert(d.dart(cur).twin);
            note(&mut rep, cur, m0);
            note(&mut rep, d.dart(cur).twin, m1);
            cur = d.opposite(d.dart(cur).twin);
            if cur == s {
                break;
            }
        }
        circles.push((next_vertex, m0, m1));
        next_vertex += 1;
    }
    for &i in &removed {
        let l = label(i);
        raw.twins.remove(&l);
        raw.forward.remove(&l);
    }
    raw.vertices.remove(&d.vertices()[u].label);
    raw.vertices.remove(&d.vertices()[w].label);
    for (x, y) in new_twins {
        raw.set_twin(x, y);
    }
    for (v, m0, m1) in circles {
        raw.vertices.insert(v, vec![m0, m1]);
        raw.set_twin(m0, m1);
        raw.forward.insert(m0);
    }
    if tu == tw {
        rep.shared_face = Some(tu);
    }
    rep.finish(d, raw)
}

/// A small loop on the left of `dart`. The new double point has darts
/// `n..n+4`; the loop face lies on the left of dart `n`.
pub fn kink(d: &CurveDiagram, dart: u32) -> Result<CurveDiagram> {
    let i = index(d, dart)?;
    let fd = d.dart(i).forward;
    let mut raw = d.raw().clone();
    let t = raw.twins[&dart];
    let v = raw.next_vertex_label();
    let n = raw.next_dart_label();
    let [ne, nw, sw, se] = [n, n + 1, n + 2, n + 3];
    raw.vertices.insert(v, vec![ne, nw, sw, se]);
    raw.set_twin(ne, nw);
    raw.set_twin(sw, dart);
    raw.set_twin(se, t);
    for (l, fwd) in [(ne, fd), (nw, !fd), (sw, !fd), (se, fd)] {
        if fwd {
            raw.forward.insert(l);
        }
    }
    Repair::default().finish(d, raw)
}
