//! Generators for test packings: fcc and hcp patches and random
//! saturated configurations.
//!
//! All generators put a vertex at the origin and return points sorted by
//! distance from it (ties broken lexicographically), so downstream code
//! can treat index 0 as the distinguished vertex.

use crate::geom::vec3::{dist, norm, V3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sort_patch(mut pts: Vec<V3>) -> Vec<V3> {
    pts.sort_by(|a, b| {
        (norm(*a), a[0], a[1], a[2])
            .partial_cmp(&(norm(*b), b[0], b[1], b[2]))
            .unwrap()
    });
    pts
}

/// Ball-shaped patch of the face-centered cubic packing with unit-spacing
/// 2, centered on a lattice point.  `shells` is the patch radius in units
/// of the nearest-neighbor distance.
pub fn fcc_patch(shells: u32) -> Vec<V3> {
    let radius = 2.0 * shells as f64 + 1e-9;
    let s = std::f64::consts::SQRT_2;
    let range = (radius / s).ceil() as i64 + 1;
    let mut pts = Vec::new();
    for i in -range..=range {
        for j in -range..=range {
            for k in -range..=range {
                if (i + j + k) % 2 != 0 {
                    continue;
                }
                let p = [s * i as f64, s * j as f64, s * k as f64];
                if norm(p) <= radius {
                    pts.push(p);
                }
            }
        }
    }
    sort_patch(pts)
}

/// Ball-shaped patch of the hexagonal close packing with nearest-neighbor
/// distance 2, centered on a vertex of an A layer.
pub fn hcp_patch(shells: u32) -> Vec<V3> {
    let radius = 2.0 * shells as f64 + 1e-9;
    let sqrt3 = 3.0_f64.sqrt();
    let layer_h = 2.0 * (2.0 / 3.0_f64).sqrt();
    let range = (radius / 2.0).ceil() as i64 + 2;
    let mut pts = Vec::new();
    for layer in -range..=range {
        let z = layer_h * layer as f64;
        let (ox, oy) = if layer.rem_euclid(2) == 0 {
            (0.0, 0.0)
        } else {
            (1.0, 1.0 / sqrt3)
        };
        for i in -range..=range {
            for j in -range..=range {
                let p = [
                    ox + 2.0 * i as f64 + j as f64,
                    oy + sqrt3 * j as f64,
                    z,
                ];
                if norm(p) <= radius {
                    pts.push(p);
                }
            }
        }
    }
    sort_patch(pts)
}

/// Random saturated configuration of roughly `target` vertices with a
/// vertex at the origin: greedy insertion of uniform candidates in a ball
/// sized for the target count, followed by a dense fill pass so that no
/// admissible point inside the ball is left uncovered except with
/// negligible probability.
pub fn random_saturated(target: usize, seed: u64) -> Vec<V3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // random sequential insertion saturates near 0.32 centers per unit
    // volume of the inflated ball
    let radius = (target as f64 / 0.32).cbrt() - 1.0;
    let mut pts: Vec<V3> = vec![[0.0; 3]];
    let sample = |rng: &mut ChaCha8Rng| -> V3 {
        loop {
            let p = [
                rng.gen_range(-radius..radius),
                rng.gen_range(-radius..radius),
                rng.gen_range(-radius..radius),
            ];
            if norm(p) <= radius {
                return p;
            }
        }
    };
    let admissible = |pts: &[V3], p: V3| pts.iter().all(|&q| dist(p, q) >= 2.0);
    let mut misses = 0usize;
    while misses < 2000 {
        let p = sample(&mut rng);
        if admissible(&pts, p) {
            pts.push(p);
            misses = 0;
        } else {
            misses += 1;
        }
    }
    // fill pass: many more candidates to close the remaining gaps
    for _ in 0..200_000 {
        let p = sample(&mut rng);
        if admissible(&pts, p) {
            pts.push(p);
        }
    }
    sort_patch(pts)
}

/// Smallest pairwise distance in a point set (brute force).
pub fn min_pair_distance(pts: &[V3]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.min(dist(pts[i], pts[j]));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fcc_first_shell() {
        let pts = fcc_patch(1);
        assert_eq!(pts.len(), 13);
        assert_eq!(pts[0], [0.0; 3]);
        for p in &pts[1..] {
            assert!((dist(*p, [0.0; 3]) - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn fcc_is_a_packing() {
        let pts = fcc_patch(3);
        assert!(min_pair_distance(&pts) >= 2.0 - 1e-12);
        // kissing number 12 around the origin
        let near = pts.iter().filter(|p| norm(**p) < 2.0 + 1e-9).count();
        assert_eq!(near, 13);
    }

    #[test]
    fn hcp_is_a_packing_with_kissing_number_12() {
        let pts = hcp_patch(3);
        assert!(min_pair_distance(&pts) >= 2.0 - 1e-12);
        assert_eq!(pts[0], [0.0; 3]);
        let near = pts.iter().filter(|p| norm(**p) < 2.0 + 1e-9).count();
        assert_eq!(near, 13);
    }

    #[test]
    fn random_saturated_is_reproducible_and_packed() {
        let a = random_saturated(200, 7);
        let b = random_saturated(200, 7);
        assert_eq!(a, b);
        assert!(min_pair_distance(&a) >= 2.0);
        assert!(a.len() > 120, "only {} vertices", a.len());
        assert_eq!(a[0], [0.0; 3]);
        let c = random_saturated(200, 8);
        assert_ne!(a, c);
    }
}
