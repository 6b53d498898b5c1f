//! Slice movies: a surface in Morse position as a sequence of curve
//! diagrams joined by events, and St₍₂₎ read off its triple points.

use std::fmt::{self, Write as _};

use crate::alexander::{compute_alexander, Convention};
use crate::canon::isomorphic;
use crate::diagram::{parse_diagram, serialize_diagram, CurveDiagram};
use crate::error::{Error, Result};
use crate::invariants::st1;
use crate::moves::{apply, triangle_site, Move};
use crate::rational::{parse_q, q, Q};
use crate::triplelocal::fit_pattern;

/// Movies shipped with the crate, by name.
pub const SHIPPED: [(&str, &str); 7] = [
    ("sphere", include_str!("../movies/sphere.movie")),
    ("tube", include_str!("../movies/tube.movie")),
    ("torus", include_str!("../movies/torus.movie")),
    ("triple-pair", include_str!("../movies/triple-pair.movie")),
    ("nested-pair", include_str!("../movies/nested-pair.movie")),
    (
        "nested-no-pair",
        include_str!("../movies/nested-no-pair.movie"),
    ),
    (
        "triple-segment",
        include_str!("../movies/triple-segment.movie"),
    ),
];

pub fn shipped(name: &str) -> Result<Movie> {
    let (_, text) = SHIPPED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Invalid(format!("no shipped movie `{name}`")))?;
    parse_movie(text)
}

/// One event of a movie, possibly traversed backwards in time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceEvent {
    pub mv: Move,
    pub reversed: bool,
}

impl fmt::Display for SliceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "reverse of {}", self.mv)
        } else {
            write!(f, "{}", self.mv)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Movie {
    pub name: String,
    pub shift: Q,
    /// `frames[i+1]` is `frames[i]` after `events[i]`
    pub frames: Vec<CurveDiagram>,
    pub events: Vec<SliceEvent>,
    /// an open piece of surface: the ends need not be empty
    pub segment: bool,
}

impl Movie {
    /// Materialize a movie from a start frame and events.
    pub fn build(
        name: &str,
        shift: Q,
        start: CurveDiagram,
        moves: &[Move],
        segment: bool,
    ) -> Result<Movie> {
        let mut frames = vec![start];
        for (i, m) in moves.iter().enumerate() {
            let next = apply(frames.last().expect("frame"), m)
                .map_err(|e| Error::Movie(format!("event {i} ({m}): {e}")))?;
            frames.push(next);
        }
        let m = Movie {
            name: name.to_string(),
            shift,
            frames,
            events: moves
                .iter()
                .map(|mv| SliceEvent {
                    mv: mv.clone(),
                    reversed: false,
                })
                .collect(),
            segment,
        };
        m.check_closed()?;
        Ok(m)
    }

    fn check_closed(&self) -> Result<()> {
        if self.segment {
            return Ok(());
        }
        let first = self.frames.first().expect("frame");
        let last = self.frames.last().expect("frame");
        if !first.is_empty() || !last.is_empty() {
            return Err(Error::Movie(format!(
                "movie {} must start and end with the empty diagram (declare it a segment otherwise)",
                self.name
            )));
        }
        Ok(())
    }

    /// The same surface read with time running backwards.
    pub fn reversed(&self) -> Movie {
        let mut frames = self.frames.clone();
        frames.reverse();
        let mut events: Vec<SliceEvent> = self
            .events
            .iter()
            .map(|e| SliceEvent {
                mv: e.mv.clone(),
                reversed: !e.reversed,
            })
            .collect();
        events.reverse();
        Movie {
            name: format!("{}-reversed", self.name),
            shift: self.shift,
            frames,
            events,
            segment: self.segment,
        }
    }
}

/// A triple point seen as one triangle move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriplePointRecord {
    pub event: usize,
    pub triangle_before: Q,
    pub triangle_after: Q,
    /// slice values of the six gaps around the triangle
    pub sectors: [Q; 6],
    pub ind: Q,
    /// `x` fitted from the octant pattern, when it fits
    pub fitted: Option<Q>,
}

impl TriplePointRecord {
    pub fn values(&self, shift: Q) -> Vec<Q> {
        let mut v: Vec<Q> = self.sectors.iter().map(|s| s + shift).collect();
        v.push(self.triangle_before + shift);
        v.push(self.triangle_after + shift);
        v
    }

    pub fn pass(&self) -> bool {
        self.fitted == Some(self.ind)
    }
}

fn triple_point(m: &Movie, i: usize, dart: u32, reversed: bool) -> Result<TriplePointRecord> {
    // a reversed triangle move is the original one read from the later frame
    let (from, to) = if reversed {
        (&m.frames[i + 1], &m.frames[i])
    } else {
        (&m.frames[i], &m.frames[i + 1])
    };
    let site = triangle_site(from, dart)?;
    let value = |d: &CurveDiagram, l: u32| -> Result<Q> {
        let phi = compute_alexander(d, Convention::Curve)?;
        let h = d
            .dart_index(l)
            .ok_or_else(|| Error::Movie(format!("dart {l} missing around triple point")))?;
        Ok(phi.value(d.left_region(h)))
    };
    let mut tri = (value(from, dart)?, value(to, site.outward[0])?);
    if reversed {
        tri = (tri.1, tri.0);
    }
    let mut sectors = [q(0); 6];
    for (k, &l) in site.legs.iter().enumerate() {
        let a = value(from, l)?;
        if value(to, l)? != a {
            return Err(Error::Movie(format!(
                "event {i}: gap left of dart {l} changed across the triangle move"
            )));
        }
        sectors[k] = a;
    }
    let mut rec = TriplePointRecord {
        event: i,
        triangle_before: tri.0,
        triangle_after: tri.1,
        sectors,
        ind: q(0),
        fitted: None,
    };
    let vals = rec.values(m.shift);
    rec.ind = vals.iter().sum::<Q>() / q(8);
    rec.fitted = fit_pattern(&vals);
    Ok(rec)
}

/// St₍₂₎ as the sum of triple-point indices, with one record per triangle move.
pub fn st2_of_movie(m: &Movie) -> Result<(Q, Vec<TriplePointRecord>)> {
    let mut records = Vec::new();
    for (i, e) in m.events.iter().enumerate() {
        if let Move::Riii { dart } = e.mv {
            let r = triple_point(m, i, dart, e.reversed)?;
            if !r.pass() {
                return Err(Error::Movie(format!(
                    "event {i}: values {:?} around the triple point do not form the cubical pattern",
                    r.values(m.shift).iter().map(ToString::to_string).collect::<Vec<_>>()
                )));
            }
            records.push(r);
        }
    }
    Ok((records.iter().map(|r| r.ind).sum(), records))
}

/// St₍₁₎ of every frame; the empty diagram counts as 0.
pub fn st1_trace(m: &Movie) -> Result<Vec<Q>> {
    m.frames
        .iter()
        .map(|d| {
            if d.is_empty() {
                return Ok(q(0));
            }
            let phi = compute_alexander(d, Convention::Curve)?;
            Ok(st1(d, &phi).point)
        })
        .collect()
}

/// Jumps of St₍₁₎ across every event.
pub fn st1_jumps(m: &Movie) -> Result<Vec<Q>> {
    let t = st1_trace(m)?;
    Ok(t.windows(2).map(|w| w[1] - w[0]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub before: String,
    pub after: String,
    pub st2_before: Q,
    pub st2_after: Q,
    pub ds2: Q,
    pub ds1: Q,
    pub sigma: i64,
}

impl SliceReport {
    pub fn pass(&self) -> bool {
        self.ds2 == self.ds1 + q(self.sigma)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# slice-formula {} -> {}", self.before, self.after);
        let _ = writeln!(s, "st2-before {}", self.st2_before);
        let _ = writeln!(s, "st2-after {}", self.st2_after);
        let _ = writeln!(s, "dst2 {}", self.ds2);
        let _ = writeln!(s, "dst1 {}", self.ds1);
        let _ = writeln!(s, "sigma {}", self.sigma);
        let _ = writeln!(
            s,
            "dst2 = dst1 + sigma {}",
            if self.pass() { "pass" } else { "FAIL" }
        );
        s
    }
}

/// Compare St₍₂₎ of two movies against a caller-designated St₍₁₎ jump and sign.
pub fn slice_formula_check(
    before: &Movie,
    after: &Movie,
    ds1: Q,
    sigma: i64,
) -> Result<SliceReport> {
    if sigma != 1 && sigma != -1 {
        return Err(Error::Invalid(format!(
            "sigma must be +1 or -1, got {sigma}"
        )));
    }
    let (a, _) = st2_of_movie(before)?;
    let (b, _) = st2_of_movie(after)?;
    Ok(SliceReport {
        before: before.name.clone(),
        after: after.name.clone(),
        st2_before: a,
        st2_after: b,
        ds2: b - a,
        ds1,
        sigma,
    })
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parse the movie format. Frames after the first are checkpoints that must
/// be isomorphic to the diagram reached by the events so far.
pub fn parse_movie(text: &str) -> Result<Movie> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = None;
    let mut start: Option<CurveDiagram> = None;
    let mut moves: Vec<Move> = Vec::new();
    let mut checkpoints: Vec<(usize, usize, CurveDiagram)> = Vec::new();
    while let Some((ln, raw)) = lines.next() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "movie" => {
                if header.is_some() {
                    return Err(syntax(ln, "second movie header"));
                }
                let name = toks
                    .get(1)
                    .ok_or_else(|| syntax(ln, "movie needs a name"))?;
                let mut shift = Q::new(-3, 2);
                let mut segment = false;
                let mut i = 2;
                while i < toks.len() {
                    match toks[i] {
                        "shift" => {
                            let v = toks
                                .get(i + 1)
                                .ok_or_else(|| syntax(ln, "shift needs a value"))?;
                            shift =
                                parse_q(v).ok_or_else(|| syntax(ln, format!("bad shift `{v}`")))?;
                            i += 2;
                        }
                        "segment" => {
                            segment = true;
                            i += 1;
                        }
                        t => return Err(syntax(ln, format!("unexpected `{t}` in header"))),
                    }
                }
                header = Some((name.to_string(), shift, segment));
            }
            "frame" => {
                if header.is_none() {
                    return Err(syntax(ln, "frame before movie header"));
                }
                let rest = line["frame".len()..].trim();
                let mut body = String::new();
                if rest == "{}" || rest == "{ }" {
                } else if rest == "{" {
                    let mut closed = false;
                    for (_, l) in lines.by_ref() {
                        if l.trim() == "}" {
                            closed = true;
                            break;
                        }
                        body.push_str(l);
                        body.push('\n');
                    }
                    if !closed {
                        return Err(syntax(ln, "unterminated frame"));
                    }
                } else {
                    return Err(syntax(ln, "expected `frame {`"));
                }
                let d = if body.trim().is_empty() {
                    CurveDiagram::empty("empty")
                } else {
                    parse_diagram(&body).map_err(|e| match e {
                        Error::Syntax { line, msg } => syntax(ln + line, msg),
                        other => other,
                    })?
                };
                if moves.is_empty() && start.is_none() {
                    start = Some(d);
                } else {
                    checkpoints.push((ln, moves.len(), d));
                }
            }
            "event" => {
                if header.is_none() {
                    return Err(syntax(ln, "event before movie header"));
                }
                let rest = line["event".len()..].trim();
                let m: Move = rest.parse().map_err(|e: Error| syntax(ln, e.to_string()))?;
                moves.push(m);
            }
            t => return Err(syntax(ln, format!("unknown record `{t}`"))),
        }
    }
    let (name, shift, segment) = header.ok_or_else(|| syntax(1, "missing movie header"))?;
    let start = start.unwrap_or_else(|| CurveDiagram::empty("empty"));
    let movie = Movie::build(&name, shift, start, &moves, segment)?;
    for (ln, k, d) in checkpoints {
        if !isomorphic(&movie.frames[k], &d) {
            return Err(Error::Movie(format!(
                "frame at line {ln} does not match the diagram after {k} event(s)"
            )));
        }
    }
    Ok(movie)
}

/// Movie text with every materialized frame written out.
pub fn serialize_movie(m: &Movie) -> String {
    let mut s = format!("movie {} shift {}", m.name, m.shift);
    if m.segment {
        s.push_str(" segment");
    }
    s.push('\n');
    let frame = |s: &mut String, d: &CurveDiagram| {
        if d.is_empty() {
            s.push_str("frame { }\n");
        } else {
            s.push_str("frame {\n");
            s.push_str(&serialize_diagram(d));
            s.push_str("}\n");
        }
    };
    frame(&mut s, &m.frames[0]);
    for (e, d) in m.events.iter().zip(&m.frames[1..]) {
        let _ = writeln!(s, "event {}", e.mv);
        frame(&mut s, d);
    }
    s
}

/// Text report of St₍₂₎, its records and the St₍₁₎ trace.
pub fn st2_report(m: &Movie) -> Result<String> {
    let (total, recs) = st2_of_movie(m)?;
    let trace = st1_trace(m)?;
    let mut s = String::new();
    let _ = writeln!(s, "# movie {}", m.name);
    let _ = writeln!(s, "shift {}", m.shift);
    let _ = writeln!(s, "frames {}", m.frames.len());
    for (i, e) in m.events.iter().enumerate() {
        let _ = writeln!(s, "event {i} {e} st1-jump {}", trace[i + 1] - trace[i]);
    }
    let _ = writeln!(
        s,
        "st1-trace {}",
        trace
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    for r in &recs {
        let _ = writeln!(
            s,
            "triple-point event={} before={} after={} sectors={} ind={} fitted={} {}",
            r.event,
            r.triangle_before,
            r.triangle_after,
            r.sectors
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            r.ind,
            r.fitted.map_or("none".to_string(), |x| x.to_string()),
            if r.pass() { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(s, "st2 {total}");
    Ok(s)
}
