//! Canonical form of a diagram up to orientation-preserving homeomorphism
//! of the plane that respects the curve orientation.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::diagram::{CurveDiagram, VertexKind};

/// Face hosting a component after skipping outer faces, which lie in the
/// same region as the host of their own component.
fn effective_host(d: &CurveDiagram, comp: usize) -> Option<usize> {
    let mut h = d.components()[comp].host;
    while let Some(f) = h {
        let p = d.faces()[f].component;
        if d.components()[p].outer_face != f {
            return Some(f);
        }
        h = d.components()[p].host;
    }
    None
}

fn component_code(d: &CurveDiagram, comp: usize, children: &BTreeMap<usize, Vec<usize>>) -> String {
    let c = &d.components()[comp];
    let darts: Vec<usize> = c
        .vertices
        .iter()
        .flat_map(|&v| d.vertices()[v].darts.iter().copied())
        .collect();
    let kids: Vec<(usize, String)> = children
        .get(&comp)
        .into_iter()
        .flatten()
        .map(|&k| {
            let f = effective_host(d, k).expect("child has a host");
            (f, component_code(d, k, children))
        })
        .collect();
    let mut best: Option<String> = None;
    for &root in &darts {
        let mut num: BTreeMap<usize, usize> = BTreeMap::new();
        let mut order = vec![root];
        num.insert(root, 0);
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for y in [d.dart(x).ccw_next, d.dart(x).twin] {
                if let Entry::Vacant(e) = num.entry(y) {
                    e.insert(order.len());
                    order.push(y);
                }
            }
            i += 1;
        }
        let mut s = String::from("(");
        for &x in &order {
            let dx = d.dart(x);
            let _ = write!(
                s,
                "{},{},{}{}{};",
                num[&dx.ccw_next],
                num[&dx.twin],
                if dx.forward { 'f' } else { 'b' },
                if dx.face == c.outer_face { 'o' } else { 'i' },
                if d.vertices()[dx.vertex].kind == VertexKind::Marker {
                    'm'
                } else {
                    'x'
                },
            );
        }
        let mut inner: Vec<String> = kids
            .iter()
            .map(|(f, code)| {
                let fnum = d.faces()[*f]
                    .darts
                    .iter()
                    .map(|x| num[x])
                    .min()
                    .expect("face");
                format!("{fnum}:{code}")
            })
            .collect();
        inner.sort();
        s.push('[');
        s.push_str(&inner.join(","));
        s.push_str("])");
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    best.unwrap_or_default()
}

/// A string equal for two diagrams exactly when they are isomorphic.
pub fn canonical_form(d: &CurveDiagram) -> String {
    let mut children: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut top = Vec::new();
    for k in 0..d.components().len() {
        match effective_host(d, k) {
            None => top.push(k),
            Some(f) => children.entry(d.faces()[f].component).or_default().push(k),
        }
    }
    let mut codes: Vec<String> = top
        .iter()
        .map(|&k| component_code(d, k, &children))
        .collect();
    codes.sort();
    codes.join(" ")
}

pub fn isomorphic(a: &CurveDiagram, b: &CurveDiagram) -> bool {
    a.crossing_count() == b.crossing_count()
        && a.components().len() == b.components().len()
        && canonical_form(a) == canonical_form(b)
}
