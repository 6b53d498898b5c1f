//! The eight acceptance criteria, each with exact equality. Prints one line
//! per criterion and exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use dualstokes::alexander::{compute_alexander, Convention};
use dualstokes::corpus;
use dualstokes::derham::{check_stokes_curve, d2_curve};
use dualstokes::findiff::{normalization, sweep, LEVEL_PAIRS};
use dualstokes::geometry::numbering_oracle;
use dualstokes::invariants::{invariant_report, st1};
use dualstokes::movie::{shipped, st2_of_movie, SHIPPED};
use dualstokes::random::generate_random_diagram;
use dualstokes::rational::{half, q, Q};
use dualstokes::signs::EpsilonConvention;
use dualstokes::triplelocal::{
    build_ball, level_checks, octant_pattern, shumakovitch_surface, sweep_values,
};
use dualstokes::CurveDiagram;

const RANDOM_COUNT: u64 = 200;
const MAX_N: u64 = 12;

type Outcome = Result<String, String>;
/// name, check, time budget
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_diagrams() -> Vec<CurveDiagram> {
    corpus::NAMES
        .iter()
        .map(|n| corpus::diagram(n).expect("corpus"))
        .collect()
}

fn random_diagrams() -> Vec<CurveDiagram> {
    (0..RANDOM_COUNT)
        .map(|i| generate_random_diagram((1 + i % MAX_N) as usize, 1000 + i).expect("random"))
        .collect()
}

fn corpus_and_random() -> Vec<CurveDiagram> {
    let mut v = corpus_diagrams();
    v.extend(random_diagrams());
    v
}

fn findiff_backbone() -> Outcome {
    let rows = sweep(21);
    for r in &rows {
        ensure(r.pass(), || {
            format!("D^{} at {}: {} != {}", r.r, r.x, r.value, r.expected)
        })?;
    }
    let integers = rows.iter().filter(|r| r.x.is_integer()).count();
    ensure(integers > 0 && integers < rows.len(), || {
        "both parities".into()
    })?;
    let want = [
        half(1),
        Q::new(1, 6),
        Q::new(1, 6),
        Q::new(1, 18),
        Q::new(1, 24),
    ];
    for ((r, m), w) in LEVEL_PAIRS.into_iter().zip(want) {
        let n = normalization(r, m);
        ensure(n == w, || format!("normalization({r},{m}) = {n}, want {w}"))?;
    }
    Ok(format!("{} sweep rows, 5 normalizations", rows.len()))
}

fn curve_stokes() -> Outcome {
    let ds = corpus_and_random();
    let mut points = 0;
    for d in &ds {
        let rep = check_stokes_curve(d).map_err(|e| format!("{}: {e}", d.name()))?;
        for row in &rep.rows {
            ensure(row.lhs == row.rhs && row.rhs == row.ind, || {
                format!(
                    "{} vertex {}: {} {} {}",
                    d.name(),
                    row.vertex_label,
                    row.lhs,
                    row.rhs,
                    row.ind
                )
            })?;
            points += 1;
        }
    }
    let max = ds
        .iter()
        .map(CurveDiagram::crossing_count)
        .max()
        .unwrap_or(0);
    ensure(ds.len() >= 206 && max == 12, || {
        "random set too small".into()
    })?;
    Ok(format!("{} diagrams, {points} double points", ds.len()))
}

fn untwisted_identity() -> Outcome {
    for d in &corpus_and_random() {
        let phi = compute_alexander(d, Convention::Curve).map_err(|e| e.to_string())?;
        let l = st1(d, &phi);
        ensure(l.pass(), || {
            format!("{}: {} {} {}", d.name(), l.point, l.edge, l.region)
        })?;
    }
    for (name, want) in [("circle", 0), ("figure-eight", 0), ("one-kink", 1)] {
        let e = corpus::embedded(name).map_err(|e| e.to_string())?;
        let d = &e.diagram;
        let phi = compute_alexander(d, Convention::Curve).map_err(|e| e.to_string())?;
        let got = st1(d, &phi).point;
        ensure(got == q(want), || format!("{name}: st1 {got}, want {want}"))?;
        // the same sum from winding numbers of sample points
        let w = numbering_oracle(&e);
        let from_oracle: Q = d
            .crossings()
            .map(|v| {
                d.vertices()[v]
                    .darts
                    .iter()
                    .map(|&h| q(w[&d.dart(h).label]))
                    .sum::<Q>()
                    / q(4)
            })
            .sum();
        ensure(from_oracle == q(want), || {
            format!("{name}: oracle gives {from_oracle}")
        })?;
    }
    Ok("corpus and random; circle 0, figure-eight 0, one-kink 1".into())
}

fn original_identity() -> Outcome {
    let mut rows = 0;
    for d in &corpus_and_random() {
        let r = invariant_report(d, EpsilonConvention::Standard)
            .map_err(|e| format!("{}: {e}", d.name()))?;
        ensure(r.st.pass(), || {
            format!("{}: {} {} {}", d.name(), r.st.point, r.st.edge, r.st.region)
        })?;
        ensure(r.base_invariant() && !r.base_sweep.is_empty(), || {
            format!("{}: base sweep {:?}", d.name(), r.base_sweep)
        })?;
        for row in &r.ledger {
            let want = q(row.epsilon) * row.ind;
            ensure(
                row.point == want && row.edge == want && row.region == want,
                || format!("{} vertex {}", d.name(), row.vertex_label),
            )?;
            rows += 1;
        }
    }
    Ok(format!("{rows} ledger rows"))
}

fn surface_identities() -> Outcome {
    let mut balls = Vec::new();
    for x in sweep_values(21) {
        let b = build_ball(x);
        for c in level_checks(&b) {
            ensure(c.value == x && c.expected == x, || {
                format!("x={x} {}: {}", c.level, c.value)
            })?;
        }
        let got = b.region_coefficients();
        let want = vec![
            (x + half(3), 1),
            (x + half(1), -3),
            (x - half(1), 3),
            (x - half(3), -1),
        ];
        ensure(got == want, || format!("x={x}: coefficients {got:?}"))?;
        balls.push(b);
    }
    let t = shumakovitch_surface(&balls);
    ensure(t.pass(), || "surface totals".into())?;
    Ok(format!("{} values of x", balls.len()))
}

fn movie_engine() -> Outcome {
    for name in ["sphere", "torus"] {
        let (v, _) =
            st2_of_movie(&shipped(name).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(v == q(0), || format!("{name}: st2 {v}"))?;
    }
    let mut records = 0;
    for (name, _) in SHIPPED {
        let m = shipped(name).map_err(|e| e.to_string())?;
        let (_, recs) = st2_of_movie(&m).map_err(|e| format!("{name}: {e}"))?;
        for r in recs {
            let mut vals = r.values(m.shift);
            vals.sort();
            let x = r.fitted.ok_or_else(|| format!("{name}: no fit"))?;
            ensure(vals == octant_pattern(x) && x == r.ind, || {
                format!("{name} event {}", r.event)
            })?;
            records += 1;
        }
    }
    let single = shipped("triple-segment").map_err(|e| e.to_string())?;
    let (v, recs) = st2_of_movie(&single).map_err(|e| e.to_string())?;
    ensure(recs.len() == 1, || "one triple point".into())?;
    let ball = build_ball(recs[0].fitted.expect("fitted")).index();
    ensure(v == ball, || {
        format!("single triple point: st2 {v}, ball {ball}")
    })?;
    Ok(format!(
        "{records} triple-point records, single one gives {v}"
    ))
}

fn reversal_negation() -> Outcome {
    let mut vertices = 0;
    for d in &corpus_diagrams() {
        let r = d.reversed();
        let pd = compute_alexander(d, Convention::Curve).map_err(|e| e.to_string())?;
        let pr = compute_alexander(&r, Convention::Curve).map_err(|e| e.to_string())?;
        let (a, b) = (st1(d, &pd).point, st1(&r, &pr).point);
        ensure(b == -a, || format!("{}: st1 {a} -> {b}", d.name()))?;
        for p in d.crossings() {
            let label = d.vertices()[p].label;
            let rp = r
                .vertices()
                .iter()
                .position(|v| v.label == label)
                .expect("vertex");
            let (x, y) = (d2_curve(d, &pd, p), d2_curve(&r, &pr, rp));
            ensure(y == -x, || {
                format!("{} vertex {label}: d2 {x} -> {y}", d.name())
            })?;
            vertices += 1;
        }
    }
    Ok(format!("{vertices} double points"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_dualstokes"))
            .args(["verify", "--corpus", "--format", "records"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || {
        "verify --corpus failed".into()
    })?;
    ensure(a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "finite-difference backbone",
            findiff_backbone,
            Some(Duration::from_secs(1)),
        ),
        ("curve Stokes", curve_stokes, Some(Duration::from_secs(10))),
        ("untwisted identity", untwisted_identity, None),
        ("original St identity", original_identity, None),
        (
            "surface identities",
            surface_identities,
            Some(Duration::from_secs(1)),
        ),
        ("movie engine", movie_engine, Some(Duration::from_secs(5))),
        ("reversal negation", reversal_negation, None),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let mut res = f();
        let dt = t.elapsed();
        if let (Ok(_), Some(b)) = (&res, budget) {
            if dt > b {
                res = Err(format!("took {dt:?}, budget {b:?}"));
            }
        }
        match res {
            Ok(msg) => println!("PASS {} {name}: {msg} ({dt:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg} ({dt:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
