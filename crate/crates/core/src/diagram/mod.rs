//! Generic immersed plane curves as oriented 4-valent planar maps.
//!
//! A diagram is stored as a rotation system over darts (half-edges). Every
//! dart has its tail at a vertex; `twin` pairs the two darts of an arc and the
//! cyclic order at a vertex is counterclockwise. Double points are 4-valent.
//! A closed strand without crossings carries a single 2-valent marker so that
//! it still has darts and faces.
//!
//! The face on the left of a dart `h` continues with `ccw_prev(twin(h))`.
//! The sector of a vertex lying counterclockwise after dart `h` is the face of
//! `h`.
//!
//! Disconnected diagrams are a forest of connected components: each component
//! names its own outer face and, unless it is top-level, the face of another
//! component it sits in.

mod cells;
mod text;

pub use cells::{CellKind, Cells, MapCell};
pub use text::{parse_diagram, serialize_diagram};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Placement of a connected component: the dart whose left face is the
/// component's outer face, and the dart (of another component) whose left face
/// contains it. `host == None` means the unbounded region.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OuterSpec {
    pub witness: u32,
    pub host: Option<u32>,
}

/// Labelled, unvalidated diagram data. Moves edit this form and rebuild.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDiagram {
    pub name: String,
    /// vertex label -> counterclockwise dart labels (4 for a crossing, 2 for a marker)
    pub vertices: BTreeMap<u32, Vec<u32>>,
    /// stored in both directions
    pub twins: BTreeMap<u32, u32>,
    /// darts traversed along the curve orientation
    pub forward: BTreeSet<u32>,
    pub outers: Vec<OuterSpec>,
    pub base: Option<u32>,
}

impl RawDiagram {
    pub fn new(name: impl Into<String>) -> Self {
        RawDiagram {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn set_twin(&mut self, a: u32, b: u32) {
        self.twins.insert(a, b);
        self.twins.insert(b, a);
    }

    pub fn next_dart_label(&self) -> u32 {
        self.vertices
            .values()
            .flatten()
            .max()
            .map(|m| m + 1)
            .unwrap_or(0)
    }

    pub fn next_vertex_label(&self) -> u32 {
        self.vertices.keys().max().map(|m| m + 1).unwrap_or(0)
    }

    /// Vertex label and position of a dart.
    pub fn locate(&self, dart: u32) -> Option<(u32, usize)> {
        self.vertices
            .iter()
            .find_map(|(v, ds)| ds.iter().position(|&d| d == dart).map(|i| (*v, i)))
    }

    /// The dart continuing straight through the vertex of `dart`.
    pub fn opposite(&self, dart: u32) -> Option<u32> {
        let (v, i) = self.locate(dart)?;
        let ds = &self.vertices[&v];
        Some(ds[(i + ds.len() / 2) % ds.len()])
    }

    /// Replace every use of `old` as an outer witness, host, or base.
    pub fn rename_reference(&mut self, old: u32, new: u32) {
        for o in &mut self.outers {
            if o.witness == old {
                o.witness = new;
            }
            if o.host == Some(old) {
                o.host = Some(new);
            }
        }
        if self.base == Some(old) {
            self.base = Some(new);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Crossing,
    Marker,
}

#[derive(Clone, Debug)]
pub struct Dart {
    pub label: u32,
    pub vertex: usize,
    pub slot: usize,
    pub ccw_next: usize,
    pub ccw_prev: usize,
    pub twin: usize,
    pub forward: bool,
    pub face: usize,
    pub edge: usize,
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub label: u32,
    pub kind: VertexKind,
    pub darts: Vec<usize>,
    pub component: usize,
}

/// A local face: one boundary cycle of one component, faces on the left.
#[derive(Clone, Debug)]
pub struct Face {
    pub darts: Vec<usize>,
    pub component: usize,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub faces: Vec<usize>,
    pub outer_face: usize,
    /// face of another component containing this one
    pub host: Option<usize>,
    pub crossings: usize,
}

/// A region of the plane complement: a union of local faces.
#[derive(Clone, Debug)]
pub struct Region {
    pub faces: Vec<usize>,
}

/// An arc (1-cell): a twin pair, named by its forward dart.
#[derive(Clone, Copy, Debug)]
pub struct Edge {
    pub forward: usize,
    pub backward: usize,
}

/// A validated diagram. Immutable once built.
#[derive(Clone, Debug)]
pub struct CurveDiagram {
    raw: RawDiagram,
    darts: Vec<Dart>,
    index: HashMap<u32, usize>,
    vertices: Vec<Vertex>,
    faces: Vec<Face>,
    components: Vec<Component>,
    regions: Vec<Region>,
    face_region: Vec<usize>,
    edges: Vec<Edge>,
    base: Option<usize>,
}

/// Region id of the unbounded region.
pub const UNBOUNDED: usize = 0;

impl CurveDiagram {
    pub fn empty(name: impl Into<String>) -> Self {
        Self::from_raw(RawDiagram::new(name)).expect("empty diagram is valid")
    }

    pub fn from_raw(raw: RawDiagram) -> Result<Self> {
        // darts and vertices, in label order
        let mut dart_vertex: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        let mut vertices = Vec::with_capacity(raw.vertices.len());
        for (vi, (vl, ds)) in raw.vertices.iter().enumerate() {
            let kind = match ds.len() {
                4 => VertexKind::Crossing,
                2 => VertexKind::Marker,
                n => {
                    return Err(Error::Malformed(format!(
                        "vertex {vl} has {n} darts, expected 4 (double point) or 2 (marker)"
                    )))
                }
            };
            for (slot, &d) in ds.iter().enumerate() {
                if dart_vertex.insert(d, (vi, slot)).is_some() {
                    return Err(Error::Malformed(format!("dart {d} listed at two vertices")));
                }
            }
            vertices.push(Vertex {
                label: *vl,
                kind,
                darts: Vec::new(),
                component: usize::MAX,
            });
        }
        let index: HashMap<u32, usize> = dart_vertex
            .keys()
            .enumerate()
            .map(|(i, &l)| (l, i))
            .collect();
        for (v, ds) in raw.vertices.values().enumerate() {
            vertices[v].darts = ds.iter().map(|d| index[d]).collect();
        }

        let mut darts = Vec::with_capacity(index.len());
        for (&label, &(vertex, slot)) in &dart_vertex {
            let ring = &vertices[vertex].darts;
            let n = ring.len();
            let twin_label = *raw
                .twins
                .get(&label)
                .ok_or_else(|| Error::Malformed(format!("dart {label} has no twin")))?;
            let twin = *index.get(&twin_label).ok_or_else(|| {
                Error::Malformed(format!(
                    "twin {twin_label} of dart {label} is not at any vertex"
                ))
            })?;
            if raw.twins.get(&twin_label) != Some(&label) {
                return Err(Error::Malformed(format!(
                    "twin is not an involution at dart {label}"
                )));
            }
            if twin_label == label {
                return Err(Error::Malformed(format!("dart {label} is its own twin")));
            }
            darts.push(Dart {
                label,
                vertex,
                slot,
                ccw_next: ring[(slot + 1) % n],
                ccw_prev: ring[(slot + n - 1) % n],
                twin,
                forward: raw.forward.contains(&label),
                face: usize::MAX,
                edge: usize::MAX,
            });
        }
        for t in raw.twins.keys() {
            if !index.contains_key(t) {
                return Err(Error::Malformed(format!("twin entry for unknown dart {t}")));
            }
        }
        for f in &raw.forward {
            if !index.contains_key(f) {
                return Err(Error::Malformed(format!(
                    "strand entry for unknown dart {f}"
                )));
            }
        }

        // orientation: one forward dart per arc, transverse passage at vertices
        let mut edges = Vec::new();
        for i in 0..darts.len() {
            let t = darts[i].twin;
            if darts[i].forward == darts[t].forward {
                return Err(Error::Malformed(format!(
                    "arc {}-{} must be oriented by exactly one of its darts",
                    darts[i].label, darts[t].label
                )));
            }
            if darts[i].forward {
                edges.push(Edge {
                    forward: i,
                    backward: t,
                });
            }
        }
        for (ei, e) in edges.iter().enumerate() {
            darts[e.forward].edge = ei;
            darts[e.backward].edge = ei;
        }
        for v in &vertices {
            let n = v.darts.len();
            for k in 0..n / 2 {
                let a = &darts[v.darts[k]];
                let b = &darts[v.darts[k + n / 2]];
                if a.forward == b.forward {
                    return Err(Error::Malformed(format!(
                        "strand through vertex {} is not transverse (darts {} and {})",
                        v.label, a.label, b.label
                    )));
                }
            }
        }

        // faces
        let mut faces: Vec<Face> = Vec::new();
        for start in 0..darts.len() {
            if darts[start].face != usize::MAX {
                continue;
            }
            let fid = faces.len();
            let mut cycle = Vec::new();
            let mut h = start;
            loop {
                darts[h].face = fid;
                cycle.push(h);
                h = darts[darts[h].twin].ccw_prev;
                if h == start {
                    break;
                }
                if darts[h].face != usize::MAX {
                    return Err(Error::Malformed("face tracing is not a permutation".into()));
                }
            }
            faces.push(Face {
                darts: cycle,
                component: usize::MAX,
            });
        }

        // components by connectivity
        let mut components: Vec<Component> = Vec::new();
        for s in 0..vertices.len() {
            if vertices[s].component != usize::MAX {
                continue;
            }
            let cid = components.len();
            let mut stack = vec![s];
            vertices[s].component = cid;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &d in &vertices[v].darts.clone() {
                    let w = darts[darts[d].twin].vertex;
                    if vertices[w].component == usize::MAX {
                        vertices[w].component = cid;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            let crossings = members
                .iter()
                .filter(|&&v| vertices[v].kind == VertexKind::Crossing)
                .count();
            components.push(Component {
                vertices: members,
                faces: Vec::new(),
                outer_face: usize::MAX,
                host: None,
                crossings,
            });
        }
        for (fi, f) in faces.iter_mut().enumerate() {
            let c = vertices[darts[f.darts[0]].vertex].component;
            f.component = c;
            components[c].faces.push(fi);
        }
        for (ci, c) in components.iter().enumerate() {
            let expected = c.crossings + 2;
            if c.faces.len() != expected {
                return Err(Error::NonRealizable {
                    component: ci,
                    faces: c.faces.len(),
                    crossings: c.crossings,
                    expected,
                });
            }
            let markers = c.vertices.len() - c.crossings;
            if c.crossings > 0 && markers > 0 {
                return Err(Error::Malformed(format!(
                    "component {ci} has double points and {markers} marker(s); markers only close crossing-free circles"
                )));
            }
            if c.crossings == 0 && markers != 1 {
                return Err(Error::Malformed(format!(
                    "crossing-free component {ci} must carry exactly one marker, found {markers}"
                )));
            }
        }

        // placement of components
        let dart_of = |l: u32, what: &str| -> Result<usize> {
            index
                .get(&l)
                .copied()
                .ok_or_else(|| Error::Outer(format!("{what} {l} is not a dart")))
        };
        for o in &raw.outers {
            let w = dart_of(o.witness, "witness")?;
            let c = vertices[darts[w].vertex].component;
            if components[c].outer_face != usize::MAX {
                return Err(Error::Outer(format!(
                    "component of dart {} has two outer designations",
                    o.witness
                )));
            }
            components[c].outer_face = darts[w].face;
            if let Some(h) = o.host {
                let hd = dart_of(h, "host")?;
                if vertices[darts[hd].vertex].component == c {
                    return Err(Error::Outer(format!(
                        "component of dart {} cannot sit inside itself",
                        o.witness
                    )));
                }
                components[c].host = Some(darts[hd].face);
            }
        }
        for (ci, c) in components.iter().enumerate() {
            if c.outer_face == usize::MAX {
                return Err(Error::Outer(format!(
                    "component {ci} has no outer face designated"
                )));
            }
        }
        // nesting must be a forest
        for start in 0..components.len() {
            let mut seen = vec![false; components.len()];
            let mut c = start;
            while let Some(hf) = components[c].host {
                if seen[c] {
                    return Err(Error::Outer("component nesting is cyclic".into()));
                }
                seen[c] = true;
                c = faces[hf].component;
            }
        }

        // regions: union-find over faces plus a virtual unbounded node
        let nf = faces.len();
        let mut parent: Vec<usize> = (0..=nf).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &components {
            let other = c.host.unwrap_or(nf);
            let (a, b) = (find(&mut parent, c.outer_face), find(&mut parent, other));
            parent[a] = b;
        }
        let mut root_region: HashMap<usize, usize> = HashMap::new();
        let unbounded_root = find(&mut parent, nf);
        root_region.insert(unbounded_root, UNBOUNDED);
        let mut regions = vec![Region { faces: Vec::new() }];
        let mut face_region = vec![0; nf];
        for (f, slot) in face_region.iter_mut().enumerate() {
            let r = find(&mut parent, f);
            let id = *root_region.entry(r).or_insert_with(|| {
                regions.push(Region { faces: Vec::new() });
                regions.len() - 1
            });
            regions[id].faces.push(f);
            *slot = id;
        }

        let base = match raw.base {
            None => None,
            Some(b) => {
                let d = *index
                    .get(&b)
                    .ok_or_else(|| Error::BaseEdge(format!("{b} is not a dart")))?;
                let e = darts[d].edge;
                let adjacent = [edges[e].forward, edges[e].backward]
                    .iter()
                    .any(|&h| face_region[darts[h].face] == UNBOUNDED);
                if !adjacent {
                    return Err(Error::BaseEdge(format!(
                        "arc of dart {b} does not border the unbounded region"
                    )));
                }
                Some(e)
            }
        };

        Ok(CurveDiagram {
            raw,
            darts,
            index,
            vertices,
            faces,
            components,
            regions,
            face_region,
            edges,
            base,
        })
    }

    pub fn raw(&self) -> &RawDiagram {
        &self.raw
    }

    pub fn name(&self) -> &str {
        &self.raw.name
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, i: usize) -> &Dart {
        &self.darts[i]
    }

    pub fn dart_index(&self, label: u32) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Indices of the double points, in label order.
    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.kind == VertexKind::Crossing)
            .map(|(i, _)| i)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_of_face(&self, f: usize) -> usize {
        self.face_region[f]
    }

    /// Region on the left of a dart.
    pub fn left_region(&self, dart: usize) -> usize {
        self.face_region[self.darts[dart].face]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base_edge(&self) -> Option<usize> {
        self.base
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Head vertex of a dart.
    pub fn head(&self, dart: usize) -> usize {
        self.darts[self.darts[dart].twin].vertex
    }

    /// Dart continuing straight through the tail vertex of `dart`.
    pub fn opposite(&self, dart: usize) -> usize {
        let d = &self.darts[dart];
        let ring = &self.vertices[d.vertex].darts;
        ring[(d.slot + ring.len() / 2) % ring.len()]
    }

    /// Next forward dart along the curve after forward dart `dart`.
    pub fn strand_next(&self, dart: usize) -> usize {
        self.opposite(self.darts[dart].twin)
    }

    /// Closed strands as cycles of forward darts, each starting at its least label.
    pub fn strands(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts.len()];
        let mut out = Vec::new();
        for e in &self.edges {
            let s = e.forward;
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = s;
            loop {
                seen[h] = true;
                cyc.push(h);
                h = self.strand_next(h);
                if h == s {
                    break;
                }
            }
            out.push(cyc);
        }
        out
    }

    pub fn strand_count(&self) -> usize {
        self.strands().len()
    }

    pub fn require_single_strand(&self) -> Result<()> {
        match self.strand_count() {
            1 => Ok(()),
            n => Err(Error::MultiStrand(n)),
        }
    }

    /// The four sector regions of a double point, counterclockwise, sector `k`
    /// lying between darts `k` and `k+1`.
    pub fn sector_regions(&self, v: usize) -> Vec<usize> {
        self.vertices[v]
            .darts
            .iter()
            .map(|&d| self.left_region(d))
            .collect()
    }

    /// Lengths (in darts) of every local face boundary.
    pub fn face_lengths(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.darts.len()).collect()
    }

    /// A representative dart label on the boundary of a region, if any.
    pub fn region_witness(&self, r: usize) -> Option<u32> {
        self.regions[r]
            .faces
            .iter()
            .flat_map(|&f| self.faces[f].darts.iter())
            .map(|&d| self.darts[d].label)
            .min()
    }

    /// The same curve with its orientation reversed.
    pub fn reversed(&self) -> CurveDiagram {
        let mut raw = self.raw.clone();
        let all: BTreeSet<u32> = self.darts.iter().map(|d| d.label).collect();
        raw.forward = all.difference(&self.raw.forward).copied().collect();
        raw.name = format!("{}-reversed", self.raw.name);
        CurveDiagram::from_raw(raw).expect("reversal preserves validity")
    }

    /// The mirror image: the plane orientation is flipped, the curve keeps
    /// its direction. Outer and host faces are carried by the twin darts.
    pub fn mirrored(&self) -> CurveDiagram {
        let mut raw = self.raw.clone();
        for ds in raw.vertices.values_mut() {
            ds.reverse();
        }
        // the face on the left of h becomes the face on the right of h
        let tw = |l: u32| self.raw.twins[&l];
        raw.outers = self
            .raw
            .outers
            .iter()
            .map(|o| OuterSpec {
                witness: tw(o.witness),
                host: o.host.map(tw),
            })
            .collect();
        raw.name = format!("{}-mirror", self.raw.name);
        CurveDiagram::from_raw(raw).expect("mirroring preserves validity")
    }

    /// Same diagram with a different base arc (any dart label of that arc).
    pub fn with_base(&self, base: Option<u32>) -> Result<CurveDiagram> {
        let mut raw = self.raw.clone();
        raw.base = base;
        CurveDiagram::from_raw(raw)
    }

    /// All arcs bordering the unbounded region, as forward dart labels.
    pub fn outer_arcs(&self) -> Vec<u32> {
        self.edges
            .iter()
            .filter(|e| {
                self.left_region(e.forward) == UNBOUNDED
                    || self.left_region(e.backward) == UNBOUNDED
            })
            .map(|e| self.darts[e.forward].label)
            .collect()
    }
}
