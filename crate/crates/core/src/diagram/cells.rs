use super::{CurveDiagram, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellKind {
    /// double point
    Point,
    /// arc
    Arc,
    /// complementary region
    Region,
}

impl CellKind {
    pub fn dimension(self) -> usize {
        match self {
            CellKind::Point => 0,
            CellKind::Arc => 1,
            CellKind::Region => 2,
        }
    }
}

/// A cell of the induced decomposition with adjacency one dimension up and
/// down, multiplicity preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCell {
    pub kind: CellKind,
    pub id: usize,
    pub up: Vec<usize>,
    pub down: Vec<usize>,
    /// adjacent region slots with multiplicity (sectors of a point, sides of
    /// an arc); for a region, its double-point corners with multiplicity
    pub slots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Cells {
    pub points: Vec<MapCell>,
    pub arcs: Vec<MapCell>,
    pub regions: Vec<MapCell>,
}

impl CurveDiagram {
    /// Points are indexed by vertex index, arcs by edge index, regions by
    /// region id. Point `up` lists the 4 arc germs in rotation order; arc `up`
    /// lists its (left, right) regions and `down` its endpoint double points;
    /// region `down` lists arcs, once per bordering side.
    pub fn cells(&self) -> Cells {
        let mut points = Vec::new();
        let mut region_points: Vec<Vec<usize>> = vec![Vec::new(); self.regions().len()];
        for (vi, v) in self.vertices().iter().enumerate() {
            if v.kind != VertexKind::Crossing {
                continue;
            }
            let up: Vec<usize> = v.darts.iter().map(|&d| self.dart(d).edge).collect();
            let slots = self.sector_regions(vi);
            for &r in &slots {
                region_points[r].push(vi);
            }
            points.push(MapCell {
                kind: CellKind::Point,
                id: vi,
                up,
                down: Vec::new(),
                slots,
            });
        }
        let mut region_arcs: Vec<Vec<usize>> = vec![Vec::new(); self.regions().len()];
        let mut arcs = Vec::new();
        for (ei, e) in self.edges().iter().enumerate() {
            let left = self.left_region(e.forward);
            let right = self.left_region(e.backward);
            region_arcs[left].push(ei);
            region_arcs[right].push(ei);
            let mut down = Vec::new();
            for h in [e.backward, e.forward] {
                let v = self.dart(h).vertex;
                if self.vertices()[v].kind == VertexKind::Crossing {
                    down.push(v);
                }
            }
            arcs.push(MapCell {
                kind: CellKind::Arc,
                id: ei,
                up: vec![left, right],
                down,
                slots: vec![left, right],
            });
        }
        let regions = (0..self.regions().len())
            .map(|r| {
                let mut down = region_arcs[r].clone();
                down.sort_unstable();
                let mut pts = region_points[r].clone();
                pts.sort_unstable();
                MapCell {
                    kind: CellKind::Region,
                    id: r,
                    up: Vec::new(),
                    down,
                    slots: pts,
                }
            })
            .collect();
        Cells {
            points,
            arcs,
            regions,
        }
    }
}
