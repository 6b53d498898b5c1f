//! Line-oriented diagram format.
//!
//! ```text
//! curve <name>
//! vertex <id> <h0> <h1> <h2> <h3>   # darts counterclockwise at a double point
//! point <id> <h0> <h1>              # marker closing a crossing-free circle
//! twin <h> <h'>
//! strand <h> <h'>                   # h' follows h along the orientation
//! outer <h> [in <h'>]               # face of h is the component's outer face,
//!                                   # placed in the face of h' (default: unbounded)
//! base <h>                          # optional base arc
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{CurveDiagram, OuterSpec, RawDiagram};
use crate::error::{Error, Result};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        msg: msg.into(),
    }
}

fn ids(line: usize, toks: &[&str]) -> Result<Vec<u32>> {
    toks.iter()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| syntax(line, format!("expected a non-negative id, found `{t}`")))
        })
        .collect()
}

/// Parse one diagram. Lines are numbered from `first_line`.
pub(crate) fn parse_raw(text: &str, first_line: usize) -> Result<(RawDiagram, Vec<(u32, u32)>)> {
    let mut raw = RawDiagram::default();
    let mut named = false;
    let mut strands = Vec::new();
    for (k, full) in text.lines().enumerate() {
        let line = first_line + k;
        let body = full.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks[0] {
            "curve" => {
                if named {
                    return Err(syntax(line, "second `curve` header"));
                }
                if toks.len() != 2 {
                    return Err(syntax(line, "usage: curve <name>"));
                }
                raw.name = toks[1].to_string();
                named = true;
            }
            "vertex" | "point" => {
                let want = if toks[0] == "vertex" { 6 } else { 4 };
                if toks.len() != want {
                    return Err(syntax(
                        line,
                        format!("`{}` takes an id and {} darts", toks[0], want - 2),
                    ));
                }
                let v = ids(line, &toks[1..])?;
                if raw.vertices.insert(v[0], v[1..].to_vec()).is_some() {
                    return Err(syntax(line, format!("duplicate vertex {}", v[0])));
                }
            }
            "twin" => {
                if toks.len() != 3 {
                    return Err(syntax(line, "usage: twin <h> <h'>"));
                }
                let v = ids(line, &toks[1..])?;
                for (a, b) in [(v[0], v[1]), (v[1], v[0])] {
                    if let Some(&old) = raw.twins.get(&a) {
                        if old != b {
                            return Err(syntax(
                                line,
                                format!("dart {a} already twinned with {old}"),
                            ));
                        }
                    }
                }
                raw.set_twin(v[0], v[1]);
            }
            "strand" => {
                if toks.len() != 3 {
                    return Err(syntax(line, "usage: strand <h> <h'>"));
                }
                let v = ids(line, &toks[1..])?;
                if !raw.forward.insert(v[0]) {
                    return Err(syntax(
                        line,
                        format!("dart {} has two strand successors", v[0]),
                    ));
                }
                strands.push((v[0], v[1]));
            }
            "outer" => {
                let spec = match toks.len() {
                    2 => OuterSpec {
                        witness: ids(line, &toks[1..2])?[0],
                        host: None,
                    },
                    4 if toks[2] == "in" => {
                        let v = ids(line, &[toks[1], toks[3]])?;
                        OuterSpec {
                            witness: v[0],
                            host: Some(v[1]),
                        }
                    }
                    _ => return Err(syntax(line, "usage: outer <h> [in <h'>]")),
                };
                raw.outers.push(spec);
            }
            "base" => {
                if toks.len() != 2 {
                    return Err(syntax(line, "usage: base <h>"));
                }
                if raw.base.is_some() {
                    return Err(syntax(line, "second `base` line"));
                }
                raw.base = Some(ids(line, &toks[1..])?[0]);
            }
            other => return Err(syntax(line, format!("unknown record `{other}`"))),
        }
    }
    if !named {
        return Err(syntax(first_line, "missing `curve <name>` header"));
    }
    if raw.vertices.is_empty() && raw.outers.is_empty() {
        // empty diagram
    } else if raw.outers.is_empty() {
        return Err(Error::Outer("no `outer` record".into()));
    }
    Ok((raw, strands))
}

/// Check `strand` records against the rotation system: the successor of `h`
/// must be the dart straight across from `twin(h)`.
pub(crate) fn check_strands(raw: &RawDiagram, strands: &[(u32, u32)]) -> Result<()> {
    let mut targets = BTreeSet::new();
    for &(h, next) in strands {
        let t = raw
            .twins
            .get(&h)
            .copied()
            .ok_or_else(|| Error::Malformed(format!("strand dart {h} has no twin")))?;
        let straight = raw
            .opposite(t)
            .ok_or_else(|| Error::Malformed(format!("dart {t} is not at any vertex")))?;
        if straight != next {
            return Err(Error::Malformed(format!(
                "strand {h} -> {next} does not pass straight through the crossing (expected {straight})"
            )));
        }
        targets.insert(next);
    }
    if targets != raw.forward {
        return Err(Error::Malformed(
            "strand records do not form a permutation of the forward darts".into(),
        ));
    }
    Ok(())
}

pub fn parse_diagram(text: &str) -> Result<CurveDiagram> {
    let (raw, strands) = parse_raw(text, 1)?;
    check_strands(&raw, &strands)?;
    CurveDiagram::from_raw(raw)
}

/// Deterministic serialization; parsing it back yields the same map.
pub fn serialize_diagram(d: &CurveDiagram) -> String {
    let raw = d.raw();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "curve {}",
        if raw.name.is_empty() {
            "unnamed"
        } else {
            &raw.name
        }
    );
    for (v, ds) in &raw.vertices {
        // rotate so the least label comes first; the cyclic order is unchanged
        let k = ds
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let rot: Vec<String> = (0..ds.len())
            .map(|i| ds[(k + i) % ds.len()].to_string())
            .collect();
        let kw = if ds.len() == 4 { "vertex" } else { "point" };
        let _ = writeln!(s, "{kw} {v} {}", rot.join(" "));
    }
    for (&a, &b) in &raw.twins {
        if a < b {
            let _ = writeln!(s, "twin {a} {b}");
        }
    }
    for &h in &raw.forward {
        let i = d.dart_index(h).expect("validated");
        let next = d.dart(d.strand_next(i)).label;
        let _ = writeln!(s, "strand {h} {next}");
    }
    let mut outers = raw.outers.clone();
    outers.sort();
    for o in outers {
        match o.host {
            None => {
                let _ = writeln!(s, "outer {}", o.witness);
            }
            Some(h) => {
                let _ = writeln!(s, "outer {} in {}", o.witness, h);
            }
        }
    }
    if let Some(b) = raw.base {
        let _ = writeln!(s, "base {b}");
    }
    s
}
