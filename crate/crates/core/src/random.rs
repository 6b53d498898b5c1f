//! Seeded random single closed curves with a prescribed number of double
//! points, grown from a circle by local moves.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::CurveDiagram;
use crate::error::{Error, Result};
use crate::moves::{birth, kink, rii_create, riii};

const MAX_REJECTIONS: usize = 10_000;

/// Pairs of darts that can be pushed across each other: distinct arcs with
/// the same region on their left.
fn bigon_sites(d: &CurveDiagram) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (i, a) in d.darts().iter().enumerate() {
        for (j, b) in d.darts().iter().enumerate().skip(i + 1) {
            if a.twin != j && d.left_region(i) == d.left_region(j) {
                out.push((a.label, b.label));
            }
        }
    }
    out
}

fn triangles(d: &CurveDiagram) -> Vec<u32> {
    d.faces()
        .iter()
        .filter(|f| f.darts.len() == 3)
        .map(|f| d.dart(f.darts[0]).label)
        .collect()
}

/// A single closed curve with exactly `n` double points, the same for the
/// same seed. The curve is grown by kinks, finger moves and triangle moves,
/// so every intermediate map is planar and passes the Euler check.
pub fn generate_random_diagram(n: usize, seed: u64) -> Result<CurveDiagram> {
    if n == 0 {
        return Err(Error::Sampling(
            "at least one double point is required; the circle covers n = 0".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = birth(&CurveDiagram::empty("random"), rng.gen_bool(0.5), None)?;
    let mut rejections = 0;
    while d.crossing_count() < n {
        let left = n - d.crossing_count();
        let step = match rng.gen_range(0..4) {
            0 | 1 if left >= 2 => bigon_sites(&d).choose(&mut rng).copied().map(|(a, b)| {
                let keep = if rng.gen_bool(0.5) { a } else { b };
                rii_create(&d, a, b, Some(keep))
            }),
            2 => triangles(&d).choose(&mut rng).map(|&t| riii(&d, t)),
            _ => {
                let h = d.darts().choose(&mut rng).expect("a curve has darts").label;
                Some(kink(&d, h))
            }
        };
        match step {
            Some(Ok(next)) => d = next,
            _ => {
                rejections += 1;
                if rejections > MAX_REJECTIONS {
                    return Err(Error::Sampling(format!(
                        "gave up after {MAX_REJECTIONS} rejected moves at {} of {n} double points",
                        d.crossing_count()
                    )));
                }
            }
        }
    }
    d.require_single_strand()?;
    let mut raw = d.raw().clone();
    raw.name = format!("random-n{n}-s{seed}");
    CurveDiagram::from_raw(raw)
}
