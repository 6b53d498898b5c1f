//! Shipped curves, each given by integer polyline coordinates so the
//! ray-casting oracle can cross-check the numbering.

use crate::diagram::CurveDiagram;
use crate::error::{Error, Result};
use crate::geometry::{polyline_to_diagram, Embedded};
use crate::rational::{q, Q};

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub points: &'static [(i64, i64)],
    pub crossings: usize,
    /// St₍₁₎ where it is known independently
    pub st1: Option<i64>,
}

pub const ENTRIES: [CorpusEntry; 6] = [
    CorpusEntry {
        name: "circle",
        points: &[(0, 0), (4, 0), (4, 4), (0, 4)],
        crossings: 0,
        st1: Some(0),
    },
    CorpusEntry {
        name: "figure-eight",
        points: &[(0, 0), (4, 4), (4, 0), (0, 4)],
        crossings: 1,
        st1: Some(0),
    },
    CorpusEntry {
        name: "one-kink",
        points: &[
            (0, 0),
            (10, 0),
            (10, 10),
            (6, 10),
            (3, 5),
            (7, 5),
            (4, 10),
            (0, 10),
        ],
        crossings: 1,
        st1: Some(1),
    },
    CorpusEntry {
        name: "two-kink",
        points: &[
            (0, 0),
            (20, 0),
            (20, 10),
            (16, 10),
            (13, 5),
            (17, 5),
            (14, 10),
            (6, 10),
            (3, 5),
            (7, 5),
            (4, 10),
            (0, 10),
        ],
        crossings: 2,
        st1: Some(2),
    },
    CorpusEntry {
        name: "trefoil",
        points: &[
            (0, -4),
            (9, -1),
            (10, 6),
            (4, 8),
            (-3, 2),
            (-5, -7),
            (0, -12),
            (5, -7),
            (3, 2),
            (-4, 8),
            (-10, 6),
            (-9, -1),
        ],
        crossings: 3,
        st1: None,
    },
    CorpusEntry {
        name: "six-crossing",
        points: &[
            (16, 0),
            (10, -3),
            (2, 6),
            (6, 14),
            (9, 10),
            (0, 4),
            (-9, 10),
            (-6, 14),
            (-2, 6),
            (-10, -3),
            (-16, 0),
            (-10, 3),
            (-2, -6),
            (-6, -14),
            (-9, -10),
            (0, -4),
            (9, -10),
            (6, -14),
            (2, -6),
            (10, 3),
        ],
        crossings: 6,
        st1: None,
    },
];

pub const NAMES: [&str; 6] = [
    "circle",
    "figure-eight",
    "one-kink",
    "two-kink",
    "trefoil",
    "six-crossing",
];

pub fn entry(name: &str) -> Result<&'static CorpusEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Invalid(format!("no corpus entry `{name}`")))
}

pub fn embedded(name: &str) -> Result<Embedded> {
    let e = entry(name)?;
    polyline_to_diagram(e.name, e.points)
}

pub fn diagram(name: &str) -> Result<CurveDiagram> {
    embedded(name).map(|e| e.diagram)
}

pub fn expected_st1(name: &str) -> Option<Q> {
    entry(name).ok().and_then(|e| e.st1).map(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{compute_alexander, Convention};
    use crate::geometry::numbering_oracle;

    #[test]
    fn names_match_entries() {
        let names: Vec<&str> = ENTRIES.iter().map(|e| e.name).collect();
        assert_eq!(names, NAMES);
    }

    #[test]
    fn every_entry_builds_with_expected_shape() {
        for e in &ENTRIES {
            let d = diagram(e.name).unwrap();
            assert_eq!(d.crossing_count(), e.crossings, "{}", e.name);
            assert_eq!(d.strand_count(), 1);
            assert_eq!(d.faces().len(), e.crossings + 2);
        }
    }

    #[test]
    fn ray_casting_agrees_with_numbering() {
        for name in NAMES {
            let emb = embedded(name).unwrap();
            let d = &emb.diagram;
            let phi = compute_alexander(d, Convention::Curve).unwrap();
            let oracle = numbering_oracle(&emb);
            assert_eq!(oracle.len(), d.darts().len());
            for (h, w) in oracle {
                let i = d.dart_index(h).unwrap();
                assert_eq!(phi.value(d.left_region(i)), q(w), "{name} dart {h}");
            }
        }
    }
}
