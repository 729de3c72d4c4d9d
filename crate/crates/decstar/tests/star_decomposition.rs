//! The decomposition around an interior vertex of the face-centered
//! packing: region census, cluster scores, the volume budget, and
//! invariance under rigid motion.

use decstar::constants;
use decstar::geom::vec3::V3;
use decstar::lattice;
use decstar::oracle;
use decstar::qsys::{standard_regions, MemberKind, Packing, QSystem};
use decstar::star::{self, StarOptions};

fn fcc_packing() -> Packing {
    Packing::new(lattice::fcc_patch(3)).unwrap()
}

fn center_index(p: &Packing) -> usize {
    (0..p.len())
        .find(|&i| {
            let q = p.point(i);
            q[0] == 0.0 && q[1] == 0.0 && q[2] == 0.0
        })
        .expect("patch contains the origin")
}

#[test]
fn face_centered_regions_are_eight_triangles_and_six_quads() {
    let p = fcc_packing();
    let c = center_index(&p);
    assert!(star::is_interior(&p, c));
    let sr = standard_regions(&p, c).unwrap();
    let triangles = sr.regions.iter().filter(|r| r.side_count() == 3).count();
    let quads = sr.regions.iter().filter(|r| r.side_count() == 4).count();
    assert_eq!((triangles, quads), (8, 6));
    assert_eq!(sr.regions.len(), 14);
    let total: f64 = sr.regions.iter().map(|r| r.solid_angle).sum();
    assert!((total - 4.0 * std::f64::consts::PI).abs() < 1e-6);
}

#[test]
fn face_centered_star_scores_eight_points_with_the_expected_split() {
    let p = fcc_packing();
    let q = QSystem::build(&p);
    let c = center_index(&p);
    let sr = standard_regions(&p, c).unwrap();
    let s = star::score_star(&p, &q, &sr, &StarOptions::default()).unwrap();

    let pt = constants::pt();
    assert!(
        (s.total - 8.0 * pt).abs() < 1e-3,
        "total {} vs 8 pt {}",
        s.total,
        8.0 * pt
    );
    assert!((s.pt_multiple - 8.0).abs() < 0.02);

    let mut tri = 0;
    let mut quad = 0;
    for c in &s.clusters {
        match c.sides {
            3 => {
                tri += 1;
                assert_eq!(c.members.len(), 1);
                assert!(
                    (c.score - pt).abs() < 1e-9,
                    "triangle cluster scored {}",
                    c.score
                );
                assert_eq!(c.cell_volume, 0.0);
            }
            4 => {
                quad += 1;
                // the origin lies on the chosen diagonal of each adjacent
                // octahedron, so each square region carries four upright
                // quarters that tile its cone; the leftover cell is empty
                assert_eq!(c.members.len(), 4);
                assert!(c
                    .members
                    .iter()
                    .all(|m| matches!(m.kind, MemberKind::Quarter { .. })));
                assert_eq!(c.cell_volume, 0.0);
                assert!(
                    c.score.abs() < 3.0 * c.score_err + 1e-9,
                    "quad cluster scored {} with sigma {}",
                    c.score,
                    c.score_err
                );
            }
            n => panic!("unexpected {n}-sided region"),
        }
    }
    assert_eq!((tri, quad), (8, 6));

    // the density conversion of the total stays near the close-packing
    // density
    let fcc_density = std::f64::consts::PI / 18.0_f64.sqrt();
    assert!((s.density_bound - fcc_density).abs() < 1e-3);
}

#[test]
fn cell_and_member_volumes_budget_to_the_voronoi_cell() {
    let p = fcc_packing();
    let q = QSystem::build(&p);
    let c = center_index(&p);
    let sr = standard_regions(&p, c).unwrap();
    let s = star::score_star(&p, &q, &sr, &StarOptions::default()).unwrap();

    let cell_total: f64 = s.clusters.iter().map(|c| c.cell_volume).sum();
    let cell_err: f64 = s.clusters.iter().map(|c| c.cell_volume_err).sum();
    // each member's claim on the center is its Voronoi piece: the part of
    // the simplex nearer the center than the other three vertices
    let member_share: f64 = s
        .clusters
        .iter()
        .flat_map(|cl| &cl.members)
        .map(|m| oracle::voronoi_piece_volume(&m.simplex_at(p.points(), c).unwrap()))
        .sum();
    let rhombic_dodecahedron = 4.0 * 2.0_f64.sqrt();
    let budget = cell_total + member_share;
    assert!(
        (budget - rhombic_dodecahedron).abs() < 3.0 * cell_err + 1e-6,
        "budget {budget} vs cell volume {rhombic_dodecahedron} (sigma {cell_err})"
    );
}

fn rotate(p: V3, axis: V3, angle: f64) -> V3 {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    let k = [axis[0] / n, axis[1] / n, axis[2] / n];
    let (s, c) = angle.sin_cos();
    let dot = k[0] * p[0] + k[1] * p[1] + k[2] * p[2];
    let cross = [
        k[1] * p[2] - k[2] * p[1],
        k[2] * p[0] - k[0] * p[2],
        k[0] * p[1] - k[1] * p[0],
    ];
    std::array::from_fn(|i| p[i] * c + cross[i] * s + k[i] * dot * (1.0 - c))
}

#[test]
fn star_score_is_invariant_under_rotation() {
    let pts = lattice::fcc_patch(2);
    let rotated: Vec<V3> = pts
        .iter()
        .map(|&p| rotate(p, [1.0, 2.0, 3.0], 0.7))
        .collect();

    let mut totals = Vec::new();
    let mut errs = Vec::new();
    for set in [pts, rotated] {
        let p = Packing::new(set).unwrap();
        let q = QSystem::build(&p);
        let c = center_index(&p);
        let sr = standard_regions(&p, c).unwrap();
        let s = star::score_star(&p, &q, &sr, &StarOptions::default()).unwrap();
        totals.push(s.total);
        errs.push(s.total_err);
    }
    assert!(
        (totals[0] - totals[1]).abs() < 3.0 * (errs[0] + errs[1]) + 1e-9,
        "totals {totals:?} with sigmas {errs:?}"
    );
}

#[cfg(feature = "parallel")]
#[test]
fn parallel_and_sequential_stars_agree_exactly() {
    use decstar::Parallelism;
    let p = fcc_packing();
    let q = QSystem::build(&p);
    let c = center_index(&p);
    let sr = standard_regions(&p, c).unwrap();
    let seq = star::score_star(
        &p,
        &q,
        &sr,
        &StarOptions {
            mode: Parallelism::Sequential,
            ..StarOptions::default()
        },
    )
    .unwrap();
    let par = star::score_star(
        &p,
        &q,
        &sr,
        &StarOptions {
            mode: Parallelism::Rayon,
            ..StarOptions::default()
        },
    )
    .unwrap();
    assert_eq!(seq.total.to_bits(), par.total.to_bits());
    for (a, b) in seq.clusters.iter().zip(&par.clusters) {
        assert_eq!(a.score.to_bits(), b.score.to_bits());
        assert_eq!(a.cell_volume.to_bits(), b.cell_volume.to_bits());
    }
}
