//! Structural suite for the selected tetrahedron system on lattice
//! patches and random saturated packings: completeness, non-overlap,
//! diagonal bookkeeping, and vertex exclusion.

use decstar::geom::vec3::dist;
use decstar::lattice;
use decstar::qsys::{self, MemberKind, Packing, QSystem};

const SHORT: f64 = 2.51;

/// All four-vertex cliques of the `<= 2.51` adjacency graph whose six
/// pairwise distances make a quasi-regular tetrahedron.
fn quasi_regular_cliques(p: &Packing) -> Vec<[usize; 4]> {
    let n = p.len();
    let mut adj = vec![Vec::new(); n];
    for (i, j) in p.pairs_within(SHORT) {
        adj[i].push(j);
        adj[j].push(i);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let mut out = Vec::new();
    for i in 0..n {
        for &j in adj[i].iter().filter(|&&j| j > i) {
            let common: Vec<usize> = adj[i]
                .iter()
                .copied()
                .filter(|&k| k > j && adj[j].binary_search(&k).is_ok())
                .collect();
            for (a, &k) in common.iter().enumerate() {
                for &l in &common[a + 1..] {
                    if adj[k].binary_search(&l).is_ok() {
                        out.push([i, j, k, l]);
                    }
                }
            }
        }
    }
    out
}

fn centroid(t: &[[f64; 3]; 4]) -> [f64; 3] {
    let mut c = [0.0; 3];
    for v in t {
        for (ci, vi) in c.iter_mut().zip(v) {
            *ci += vi / 4.0;
        }
    }
    c
}

fn check_packing(label: &str, pts: Vec<[f64; 3]>) {
    let p = Packing::new(pts).unwrap();
    let q = QSystem::build(&p);
    let points = p.points();

    // every quasi-regular tetrahedron is a member
    let mut member_sets: Vec<[usize; 4]> = q.members.iter().map(|m| m.vertices).collect();
    member_sets.sort_unstable();
    let cliques = quasi_regular_cliques(&p);
    let mut qr_count = 0;
    for c in &cliques {
        let s = p.simplex([c[0], c[1], c[2], c[3]]).unwrap();
        if !matches!(s.classify(), decstar::geom::SimplexClass::QuasiRegular) {
            continue;
        }
        qr_count += 1;
        assert!(
            member_sets.binary_search(c).is_ok(),
            "{label}: quasi-regular {c:?} missing from the system"
        );
    }

    // members are pairwise non-overlapping (brute force with a centroid
    // prefilter: two unit-edge-scale tetrahedra farther apart cannot meet)
    let coords: Vec<[[f64; 3]; 4]> = q.members.iter().map(|m| m.coords(points)).collect();
    let centers: Vec<[f64; 3]> = coords.iter().map(centroid).collect();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            if dist(centers[i], centers[j]) > 6.0 {
                continue;
            }
            assert!(
                !qsys::tetra_overlap(&coords[i], &coords[j]),
                "{label}: members {:?} and {:?} overlap",
                q.members[i],
                q.members[j]
            );
        }
    }

    // diagonal completeness: a selected diagonal contributes all of its
    // quarters, an unselected one contributes none
    for d in &q.diagonals {
        for quarter in &d.quarters {
            let present = member_sets.binary_search(quarter).is_ok();
            assert_eq!(
                present, d.selected,
                "{label}: diagonal {:?} selected={} but quarter {quarter:?} present={present}",
                d.endpoints, d.selected
            );
        }
    }
    // every quarter member belongs to a selected diagonal's group
    for m in &q.members {
        if let MemberKind::Quarter { diagonal } = m.kind {
            let d = q
                .diagonals
                .iter()
                .find(|d| d.endpoints == diagonal)
                .unwrap_or_else(|| panic!("{label}: quarter {m:?} has no diagonal record"));
            assert!(d.selected);
            assert!(d.quarters.contains(&m.vertices));
        }
    }

    // no packing vertex lies interior to any member
    for (m, t) in q.members.iter().zip(&coords) {
        let c = centroid(t);
        for v in p.near_point(c, 4.0) {
            if m.contains_vertex(v) {
                continue;
            }
            assert!(
                !qsys::point_in_tetra(p.point(v), t, 1e-9),
                "{label}: vertex {v} inside member {m:?}"
            );
        }
    }

    // identical input reproduces the identical system and decision log
    let q2 = QSystem::build(&p);
    assert_eq!(q.members, q2.members);
    assert_eq!(q.log, q2.log);

    assert!(
        qr_count > 0 || !q.members.is_empty() || p.len() < 5,
        "{label}: suspiciously empty system"
    );
}

#[test]
fn face_centered_patch_passes_the_structural_suite() {
    check_packing("fcc", lattice::fcc_patch(3));
}

#[test]
fn hexagonal_patch_passes_the_structural_suite() {
    check_packing("hcp", lattice::hcp_patch(3));
}

#[test]
fn random_saturated_packings_pass_the_structural_suite() {
    for seed in 0..10 {
        let pts = lattice::random_saturated(200, seed);
        assert!(
            lattice::min_pair_distance(&pts) >= 2.0,
            "seed {seed}: packing constraint violated"
        );
        check_packing(&format!("random-{seed}"), pts);
    }
}
