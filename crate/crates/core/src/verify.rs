//! Identity suites over diagrams, the local surface model and movies, with
//! a stable text and record output.

use std::fmt::Write as _;

use crate::alexander::{compute_alexander, has_crossing_pattern, sector_values, Convention};
use crate::corpus;
use crate::derham::{check_stokes_curve, d2_curve};
use crate::diagram::CurveDiagram;
use crate::error::Error;
use crate::findiff::{normalization, sweep, LEVEL_PAIRS};
use crate::geometry::numbering_oracle;
use crate::invariants::{invariant_report, st1};
use crate::movie::{st2_of_movie, Movie, SHIPPED};
use crate::random::generate_random_diagram;
use crate::rational::{half, q, Q};
use crate::signs::EpsilonConvention;
use crate::triplelocal::{build_ball, level_checks, shumakovitch_surface, sweep_values};

/// One checked identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub subject: String,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Records,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "records" => Ok(Format::Records),
            _ => Err(Error::Invalid(format!(
                "unknown format `{s}` (expected text or records)"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
    /// inputs that could not be read or built, with the reason
    pub input_errors: Vec<(String, String)>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn pass(&self) -> bool {
        self.failures() == 0 && self.input_errors.is_empty()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.input_errors.extend(other.input_errors);
    }

    fn push(
        &mut self,
        suite: &'static str,
        subject: &str,
        name: String,
        pass: bool,
        detail: String,
    ) {
        self.checks.push(Check {
            suite,
            subject: subject.to_string(),
            name,
            pass,
            detail,
        });
    }

    fn error(&mut self, subject: &str, e: impl ToString) {
        self.input_errors.push((subject.to_string(), e.to_string()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Records => self.to_records(),
        }
    }

    /// One tab-separated line per check, then the input errors and a summary.
    pub fn to_records(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(
                s,
                "check\t{}\t{}\t{}\t{}\t{}",
                c.suite,
                c.subject,
                c.name,
                if c.pass { "pass" } else { "fail" },
                c.detail
            );
        }
        for (subject, e) in &self.input_errors {
            let _ = writeln!(s, "input-error\t{subject}\t{e}");
        }
        let _ = writeln!(
            s,
            "summary\tchecks={}\tfailures={}\tinput-errors={}",
            self.checks.len(),
            self.failures(),
            self.input_errors.len()
        );
        s
    }

    /// Per-suite counts for every subject, with failing checks spelled out.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut groups: Vec<(&str, &str, usize, usize)> = Vec::new();
        for c in &self.checks {
            match groups.last_mut() {
                Some(g) if g.0 == c.suite && g.1 == c.subject => {
                    g.2 += 1;
                    g.3 += usize::from(!c.pass);
                }
                _ => groups.push((c.suite, &c.subject, 1, usize::from(!c.pass))),
            }
        }
        for (suite, subject, n, bad) in groups {
            let status = if bad == 0 { "pass" } else { "FAIL" };
            let _ = writeln!(
                s,
                "{status:4} {suite:<10} {subject:<24} {n} checks, {bad} failed"
            );
        }
        for c in self.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(
                s,
                "  failed: {} {} {}: {}",
                c.suite, c.subject, c.name, c.detail
            );
        }
        for (subject, e) in &self.input_errors {
            let _ = writeln!(s, "  input error: {subject}: {e}");
        }
        let _ = writeln!(
            s,
            "{}: {} checks, {} failed, {} input errors",
            if self.pass() { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.failures(),
            self.input_errors.len()
        );
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub epsilon: EpsilonConvention,
}

/// Curve identities for one diagram: numbering pattern, Stokes at every
/// double point, St₍₁₎ and (for a single strand) St at three levels with
/// the base-arc sweep and ledger, and the reversal properties.
pub fn verify_diagram(d: &CurveDiagram, opts: Options) -> Report {
    let mut r = Report::default();
    let name = d.name().to_string();
    if d.is_empty() {
        return r;
    }
    let phi = match compute_alexander(d, Convention::Curve) {
        Ok(p) => p,
        Err(e) => {
            r.push(
                "numbering",
                &name,
                "consistent".into(),
                false,
                e.to_string(),
            );
            return r;
        }
    };
    for p in d.crossings() {
        let vals = sector_values(d, &phi, p);
        r.push(
            "numbering",
            &name,
            format!("vertex-{}", d.vertices()[p].label),
            has_crossing_pattern(&vals),
            join(&vals),
        );
    }
    match check_stokes_curve(d) {
        Ok(rep) => {
            for row in rep.rows {
                r.push(
                    "stokes",
                    &name,
                    format!("vertex-{}", row.vertex_label),
                    row.pass,
                    format!("lhs={} rhs={} ind={}", row.lhs, row.rhs, row.ind),
                );
            }
        }
        Err(e) => r.push("stokes", &name, "run".into(), false, e.to_string()),
    }
    let s1 = st1(d, &phi);
    r.push(
        "st1",
        &name,
        "levels".into(),
        s1.pass(),
        format!("point={} edge={} region={}", s1.point, s1.edge, s1.region),
    );
    if d.strand_count() == 1 {
        match invariant_report(d, opts.epsilon) {
            Ok(inv) => {
                r.push(
                    "st",
                    &name,
                    "levels".into(),
                    inv.st.pass(),
                    format!(
                        "point={} edge={} region={}",
                        inv.st.point, inv.st.edge, inv.st.region
                    ),
                );
                r.push(
                    "st",
                    &name,
                    "base-sweep".into(),
                    inv.base_invariant(),
                    inv.base_sweep
                        .iter()
                        .map(|(b, v)| format!("{b}:{v}"))
                        .collect::<Vec<_>>()
                        .join(","),
                );
                for row in &inv.ledger {
                    r.push(
                        "ledger",
                        &name,
                        format!("vertex-{}", row.vertex_label),
                        row.pass(),
                        format!(
                            "eps={} ind={} point={} edge={} region={}",
                            row.epsilon, row.ind, row.point, row.edge, row.region
                        ),
                    );
                }
            }
            Err(e) => r.push("st", &name, "run".into(), false, e.to_string()),
        }
    }
    r.extend(verify_reversal(d, s1.point));
    r
}

/// Reversing the orientation negates St₍₁₎ and every d² evaluation.
fn verify_reversal(d: &CurveDiagram, st1_point: Q) -> Report {
    let mut r = Report::default();
    let name = d.name().to_string();
    let rev = d.reversed();
    let (Ok(phi), Ok(phr)) = (
        compute_alexander(d, Convention::Curve),
        compute_alexander(&rev, Convention::Curve),
    ) else {
        r.push(
            "mirror",
            &name,
            "numbering".into(),
            false,
            "no numbering".into(),
        );
        return r;
    };
    let back = st1(&rev, &phr).point;
    r.push(
        "mirror",
        &name,
        "st1".into(),
        back == -st1_point,
        format!("{st1_point} -> {back}"),
    );
    for p in d.crossings() {
        let label = d.vertices()[p].label;
        let rp = rev
            .vertices()
            .iter()
            .position(|v| v.label == label)
            .expect("reversal keeps vertices");
        let (a, b) = (d2_curve(d, &phi, p), d2_curve(&rev, &phr, rp));
        r.push(
            "mirror",
            &name,
            format!("d2-vertex-{label}"),
            b == -a,
            format!("{a} -> {b}"),
        );
    }
    r
}

/// Shipped curves, with the ray-casting oracle and known St₍₁₎ values.
pub fn verify_corpus_diagrams(opts: Options) -> Report {
    let mut r = Report::default();
    for name in corpus::NAMES {
        let e = match corpus::embedded(name) {
            Ok(e) => e,
            Err(err) => {
                r.error(name, err);
                continue;
            }
        };
        let d = &e.diagram;
        if let Ok(phi) = compute_alexander(d, Convention::Curve) {
            let oracle = numbering_oracle(&e);
            let bad: Vec<String> = oracle
                .iter()
                .filter(|(&h, &w)| {
                    let i = d.dart_index(h).expect("oracle dart");
                    phi.value(d.left_region(i)) != q(w)
                })
                .map(|(h, _)| h.to_string())
                .collect();
            r.push(
                "oracle",
                name,
                "ray-casting".into(),
                bad.is_empty(),
                format!("{} darts, mismatched [{}]", oracle.len(), bad.join(",")),
            );
            if let Some(want) = corpus::expected_st1(name) {
                let got = st1(d, &phi).point;
                r.push(
                    "st1",
                    name,
                    "known".into(),
                    got == want,
                    format!("{got} want {want}"),
                );
            }
        }
        r.extend(verify_diagram(d, opts));
    }
    r
}

/// Finite differences and the normalizations of every level.
pub fn verify_findiff(range: i64) -> Report {
    let mut r = Report::default();
    for row in sweep(range) {
        r.push(
            "findiff",
            "sweep",
            format!("D{}-at-{}", row.r, row.x),
            row.pass(),
            format!("{} want {}", row.value, row.expected),
        );
    }
    let want = [
        half(1),
        Q::new(1, 6),
        Q::new(1, 6),
        Q::new(1, 18),
        Q::new(1, 24),
    ];
    for ((rr, m), w) in LEVEL_PAIRS.into_iter().zip(want) {
        let n = normalization(rr, m);
        r.push(
            "findiff",
            "normalization",
            format!("r{rr}-m{m}"),
            n == w,
            format!("{n} want {w}"),
        );
    }
    r
}

/// The triple-point ball for every half-integer in the range.
pub fn verify_surface_local(range: i64) -> Report {
    let mut r = Report::default();
    let mut balls = Vec::new();
    for x in sweep_values(range) {
        let b = build_ball(x);
        let subject = format!("x={x}");
        for c in level_checks(&b) {
            r.push(
                "surface",
                &subject,
                c.level.to_string(),
                c.pass(),
                format!("{} want {}", c.value, c.expected),
            );
        }
        let coeffs = b.region_coefficients();
        let want = vec![
            (x + half(3), 1),
            (x + half(1), -3),
            (x - half(1), 3),
            (x - half(3), -1),
        ];
        r.push(
            "surface",
            &subject,
            "region-coefficients".into(),
            coeffs == want,
            coeffs
                .iter()
                .map(|(v, c)| format!("{v}:{c}"))
                .collect::<Vec<_>>()
                .join(","),
        );
        balls.push(b);
    }
    let t = shumakovitch_surface(&balls);
    r.push(
        "surface",
        "total",
        "levels".into(),
        t.pass(),
        format!(
            "point={} edge={} face={} region={}",
            t.point, t.edge, t.face, t.region
        ),
    );
    r
}

/// St₍₂₎ with its triple-point records; `expected` pins the total.
pub fn verify_movie(m: &Movie, expected: Option<Q>) -> Report {
    let mut r = Report::default();
    match st2_of_movie(m) {
        Ok((total, recs)) => {
            for rec in &recs {
                r.push(
                    "movie",
                    &m.name,
                    format!("triple-point-{}", rec.event),
                    rec.pass(),
                    format!("values={} ind={}", join(&rec.values(m.shift)), rec.ind),
                );
            }
            if let Some(want) = expected {
                r.push(
                    "movie",
                    &m.name,
                    "st2".into(),
                    total == want,
                    format!("{total} want {want}"),
                );
            }
            if m.segment && recs.len() == 1 {
                let ball = build_ball(recs[0].fitted.unwrap_or(recs[0].ind)).index();
                r.push(
                    "movie",
                    &m.name,
                    "ball-value".into(),
                    total == ball,
                    format!("{total} ball {ball}"),
                );
            }
        }
        Err(e) => r.push("movie", &m.name, "st2".into(), false, e.to_string()),
    }
    r
}

/// St₍₂₎ for the shipped movies, with the values fixed by their topology.
pub fn verify_shipped_movies() -> Report {
    let mut r = Report::default();
    for (name, text) in SHIPPED {
        match crate::movie::parse_movie(text) {
            Ok(m) => {
                let expected = matches!(name, "sphere" | "tube" | "torus").then(|| q(0));
                r.extend(verify_movie(&m, expected));
            }
            Err(e) => r.error(name, e),
        }
    }
    r
}

/// Everything shipped: curves, finite differences, surface model, movies.
pub fn verify_corpus(opts: Options) -> Report {
    let mut r = verify_corpus_diagrams(opts);
    r.extend(verify_findiff(21));
    r.extend(verify_surface_local(21));
    r.extend(verify_shipped_movies());
    r
}

/// `count` random curves with 1..=max_n double points, seeded per index.
pub fn verify_random(count: usize, max_n: usize, seed: u64, opts: Options) -> Report {
    let mut r = Report::default();
    for i in 0..count {
        let n = 1 + i % max_n.max(1);
        let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
        match generate_random_diagram(n, s) {
            Ok(d) => r.extend(verify_diagram(&d, opts)),
            Err(e) => r.error(&format!("random-n{n}-s{s}"), e),
        }
    }
    r
}

fn join(v: &[Q]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_passes_and_is_stable() {
        let a = verify_corpus(Options::default());
        assert!(a.pass(), "{}", a.to_text());
        let b = verify_corpus(Options::default());
        assert_eq!(a.to_records(), b.to_records());
        for suite in [
            "oracle",
            "numbering",
            "stokes",
            "st1",
            "st",
            "ledger",
            "mirror",
            "findiff",
            "surface",
            "movie",
        ] {
            assert!(a.checks.iter().any(|c| c.suite == suite), "{suite}");
        }
    }

    #[test]
    fn random_sweep_passes() {
        let r = verify_random(30, 8, 7, Options::default());
        assert!(r.pass(), "{}", r.to_text());
        assert_eq!(
            r.to_records(),
            verify_random(30, 8, 7, Options::default()).to_records()
        );
    }

    #[test]
    fn failures_are_reported() {
        let mut r = verify_diagram(&corpus::diagram("one-kink").unwrap(), Options::default());
        assert!(r.pass());
        r.push("x", "y", "z".into(), false, "broken".into());
        assert!(!r.pass());
        assert!(r.to_records().contains("check\tx\ty\tz\tfail\tbroken"));
        assert!(r.to_text().contains("failed: x y z: broken"));
        r.error("bad.curve", "line 1: nope");
        assert!(r.to_records().contains("input-error\tbad.curve"));
    }

    #[test]
    fn format_names() {
        assert_eq!("records".parse::<Format>().unwrap(), Format::Records);
        assert!("json".parse::<Format>().is_err());
    }
}
