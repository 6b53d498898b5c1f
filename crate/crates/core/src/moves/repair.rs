//! Bookkeeping shared by the moves: raw-level face tracing, repair of
//! component placement after a local rewrite, and marker normalization.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{CurveDiagram, OuterSpec, RawDiagram};
use crate::error::{Error, Result};

/// Faces and components of a raw map that may not validate yet.
pub(crate) struct Topo {
    pub comp_of: BTreeMap<u32, usize>,
    pub comp_vertices: Vec<Vec<u32>>,
}

pub(crate) fn topo(raw: &RawDiagram) -> Topo {
    // union-find over vertex labels
    let vlabels: Vec<u32> = raw.vertices.keys().copied().collect();
    let pos: BTreeMap<u32, usize> = vlabels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vlabels.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut vertex_of: BTreeMap<u32, u32> = BTreeMap::new();
    for (&v, ds) in &raw.vertices {
        for &d in ds {
            vertex_of.insert(d, v);
        }
    }
    for (&a, &b) in &raw.twins {
        if let (Some(&va), Some(&vb)) = (vertex_of.get(&a), vertex_of.get(&b)) {
            let (x, y) = (find(&mut parent, pos[&va]), find(&mut parent, pos[&vb]));
            parent[x] = y;
        }
    }
    let mut root_comp: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comp_vertices: Vec<Vec<u32>> = Vec::new();
    let mut comp_of = BTreeMap::new();
    for (i, &v) in vlabels.iter().enumerate() {
        let r = find(&mut parent, i);
        let c = *root_comp.entry(r).or_insert_with(|| {
            comp_vertices.push(Vec::new());
            comp_vertices.len() - 1
        });
        comp_vertices[c].push(v);
        for &d in &raw.vertices[&v] {
            comp_of.insert(d, c);
        }
    }
    Topo {
        comp_of,
        comp_vertices,
    }
}

/// Description of how a move changed faces, for placement repair.
#[derive(Default)]
pub(crate) struct Repair {
    /// removed dart -> surviving or new dart bordering the same face piece
    pub rep: BTreeMap<u32, u32>,
    /// new dart -> old faces it borders a piece of
    pub origin: BTreeMap<u32, BTreeSet<usize>>,
    /// old face cut into separate pieces, and the dart naming the piece that
    /// inherits its role
    pub split_face: Option<usize>,
    pub keep: Option<u32>,
    /// old face whose pieces remain one region when a component falls apart
    pub shared_face: Option<usize>,
}

impl Repair {
    fn old_faces(&self, old: &CurveDiagram, label: u32) -> BTreeSet<usize> {
        let mut s = self.origin.get(&label).cloned().unwrap_or_default();
        if let Some(i) = old.dart_index(label) {
            s.insert(old.dart(i).face);
        }
        s
    }

    fn old_face(&self, old: &CurveDiagram, label: u32) -> Option<usize> {
        old.dart_index(label).map(|i| old.dart(i).face)
    }

    fn remap(&self, l: u32) -> u32 {
        let mut l = l;
        while let Some(&n) = self.rep.get(&l) {
            if n == l {
                break;
            }
            l = n;
        }
        l
    }

    /// Fix outer and host designations of `raw` (already rewired), normalize
    /// markers and validate.
    pub fn finish(self, old: &CurveDiagram, mut raw: RawDiagram) -> Result<CurveDiagram> {
        // old component owning each placement record
        let owner: Vec<Option<usize>> = raw
            .outers
            .iter()
            .map(|o| {
                old.dart_index(o.witness)
                    .map(|i| old.vertices()[old.dart(i).vertex].component)
            })
            .collect();
        for o in &mut raw.outers {
            o.witness = self.remap(o.witness);
            o.host = o.host.map(|h| self.remap(h));
        }
        raw.base = raw.base.map(|b| self.remap(b));

        if let Some(f) = self.split_face {
            let comp = old.faces()[f].component;
            let is_outer = old.components()[comp].outer_face == f;
            if let Some(k) = self.keep {
                if self.old_face(old, k) != Some(f) || !raw.twins.contains_key(&k) {
                    return Err(Error::InvalidSite(format!(
                        "keep dart {k} does not border the face being cut"
                    )));
                }
                for (o, own) in raw.outers.iter_mut().zip(&owner) {
                    if is_outer && *own == Some(comp) {
                        o.witness = k;
                    }
                    if o.host.and_then(|h| self.old_face(old, h)) == Some(f) {
                        o.host = Some(k);
                    }
                }
            } else if is_outer {
                return Err(Error::InvalidSite(
                    "the move cuts an outer face; name the piece that stays outer with `keep <dart>`"
                        .into(),
                ));
            }
        }

        let t = topo(&raw);
        let ncomp = t.comp_vertices.len();
        let comp_of = |l: u32| -> Result<usize> {
            t.comp_of
                .get(&l)
                .copied()
                .ok_or_else(|| Error::Outer(format!("dart {l} vanished")))
        };
        let mut by_comp: Vec<Vec<(OuterSpec, Option<usize>)>> = vec![Vec::new(); ncomp];
        for (o, own) in raw.outers.iter().zip(&owner) {
            by_comp[comp_of(o.witness)?].push((o.clone(), *own));
        }
        // merged components keep the placement of the part that sits outside
        for (c, specs) in by_comp.iter_mut().enumerate() {
            if specs.len() > 1 {
                specs.sort();
                let pick = specs
                    .iter()
                    .find(|(o, _)| o.host.is_none_or(|h| t.comp_of.get(&h) != Some(&c)))
                    .cloned()
                    .ok_or_else(|| Error::Outer("merged component sits inside itself".into()))?;
                *specs = vec![pick];
            }
        }
        // split-off components: the outer face is their piece of the shared face
        let orphans: Vec<usize> = (0..ncomp).filter(|&c| by_comp[c].is_empty()).collect();
        if !orphans.is_empty() {
            let shared = self.shared_face.ok_or_else(|| {
                Error::Outer("a component lost its placement and no shared face is known".into())
            })?;
            let old_comp = old.faces()[shared].component;
            let shared_is_outer = old.components()[old_comp].outer_face == shared;
            let (parent, parent_host) = by_comp
                .iter()
                .enumerate()
                .find_map(|(c, v)| {
                    v.iter()
                        .find(|(_, own)| *own == Some(old_comp))
                        .map(|(o, _)| (c, o.host))
                })
                .ok_or_else(|| Error::Outer("parent component not found".into()))?;
            let piece = |c: usize| -> Option<u32> {
                t.comp_of
                    .iter()
                    .filter(|(_, &cc)| cc == c)
                    .map(|(&d, _)| d)
                    .find(|&d| self.old_faces(old, d).contains(&shared))
            };
            for c in orphans {
                let w = piece(c).ok_or_else(|| {
                    Error::Outer("split-off component does not border the shared face".into())
                })?;
                let host = if shared_is_outer {
                    parent_host
                } else {
                    Some(piece(parent).ok_or_else(|| {
                        Error::Outer("parent does not border the shared face".into())
                    })?)
                };
                by_comp[c].push((OuterSpec { witness: w, host }, None));
            }
        }
        raw.outers = by_comp.into_iter().flatten().map(|(o, _)| o).collect();
        normalize_markers(&mut raw);
        CurveDiagram::from_raw(raw)
    }
}

/// Drop markers from components that have double points and keep only the
/// least-labelled marker on crossing-free ones.
pub(crate) fn normalize_markers(raw: &mut RawDiagram) {
    loop {
        let t = topo(raw);
        let mut victim = None;
        for vs in &t.comp_vertices {
            let markers: Vec<u32> = vs
                .iter()
                .copied()
                .filter(|v| raw.vertices[v].len() == 2)
                .collect();
            let crossings = vs.len() - markers.len();
            let drop = if crossings > 0 {
                markers.first().copied()
            } else {
                markers.get(1).copied()
            };
            if drop.is_some() {
                victim = drop;
                break;
            }
        }
        let Some(m) = victim else { break };
        let ds = raw.vertices.remove(&m).expect("marker exists");
        let (m0, m1) = (ds[0], ds[1]);
        let t0 = raw.twins[&m0];
        let t1 = raw.twins[&m1];
        for d in [m0, m1] {
            raw.twins.remove(&d);
            raw.forward.remove(&d);
        }
        raw.set_twin(t0, t1);
        raw.rename_reference(m0, t1);
        raw.rename_reference(m1, t0);
    }
}
