//! Randomized structural invariants: relabelling symmetries, coordinate
//! cross-checks, text round-trips, and interval refinement monotonicity.

use decstar::geom::vec3::{cross, dot, norm, V3};
use decstar::geom::EdgeSimplex;
use decstar::ival::funcs::{self, Box6};
use decstar::ival::Interval;
use decstar::qsys::Packing;
use decstar::score;
use proptest::prelude::*;

fn quarter_edges() -> impl Strategy<Value = [f64; 6]> {
    (2.52f64..2.80, prop::array::uniform5(2.0f64..2.51))
        .prop_map(|(d, r)| [d, r[0], r[1], r[2], r[3], r[4]])
}

fn general_edges() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(2.0f64..2.80)
}

proptest! {
    #[test]
    fn hat_is_an_involution(y in general_edges()) {
        let s = EdgeSimplex::new(y).unwrap();
        prop_assert_eq!(s.hat().hat().lengths(), s.lengths());
    }

    #[test]
    fn placements_preserve_volume_and_circumradius(y in quarter_edges()) {
        let s = EdgeSimplex::new(y).unwrap();
        prop_assume!(s.delta() > 1e-4);
        let vol = s.volume().unwrap();
        let rad = s.circumradius().unwrap();
        for p in s.placements() {
            prop_assert!((p.volume().unwrap() - vol).abs() < 1e-9 * vol.max(1.0));
            prop_assert!((p.circumradius().unwrap() - rad).abs() < 1e-9 * rad.max(1.0));
        }
    }

    #[test]
    fn compression_is_placement_invariant(y in quarter_edges()) {
        let s = EdgeSimplex::new(y).unwrap();
        prop_assume!(s.delta() > 1e-4);
        let g = score::gamma(&s).unwrap();
        for p in s.placements() {
            prop_assert!((score::gamma(&p).unwrap() - g).abs() < 1e-9);
        }
    }

    // tan(omega/2) = |v1.(v2 x v3)| / (abc + (v1.v2)c + (v1.v3)b + (v2.v3)a)
    // on realized coordinates, independent of the arctan dihedral route
    #[test]
    fn solid_angle_matches_the_coordinate_formula(y in general_edges()) {
        let s = EdgeSimplex::new(y).unwrap();
        prop_assume!(s.delta() > 1e-4);
        let r = s.realize().unwrap();
        let (a, b, c) = (norm(r.v1), norm(r.v2), norm(r.v3));
        let num = dot(r.v1, cross(r.v2, r.v3)).abs();
        let den = a * b * c
            + dot(r.v1, r.v2) * c
            + dot(r.v1, r.v3) * b
            + dot(r.v2, r.v3) * a;
        let mut omega = 2.0 * (num / den).atan();
        if omega < 0.0 {
            omega += 2.0 * std::f64::consts::PI;
        }
        prop_assert!((s.solid_angle().unwrap() - omega).abs() < 1e-9);
    }

    #[test]
    fn face_circumradius_is_symmetric_and_dominates_half_edges(
        (a, b, c) in (2.0f64..2.8, 2.0f64..2.8, 2.0f64..2.8),
    ) {
        prop_assume!(a < b + c && b < a + c && c < a + b);
        let e = decstar::geom::eta(a, b, c).unwrap();
        for (p, q, r) in [(b, a, c), (c, b, a), (b, c, a), (a, c, b), (c, a, b)] {
            prop_assert!((decstar::geom::eta(p, q, r).unwrap() - e).abs() < 1e-12);
        }
        prop_assert!(e >= a.max(b).max(c) / 2.0 - 1e-12);
        let eq = decstar::geom::eta(a, a, a).unwrap();
        prop_assert!((eq - a / 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn packing_text_round_trip_is_exact(
        jit in prop::collection::vec(prop::array::uniform3(-0.05f64..0.05), 8),
    ) {
        let mut pts: Vec<V3> = Vec::new();
        for (i, j) in jit.iter().enumerate() {
            let base = [
                2.2 * (i & 1) as f64,
                2.2 * ((i >> 1) & 1) as f64,
                2.2 * ((i >> 2) & 1) as f64,
            ];
            pts.push([base[0] + j[0], base[1] + j[1], base[2] + j[2]]);
        }
        let p = Packing::new(pts.clone()).unwrap();
        let text = p.to_text();
        let q = Packing::parse(&text).unwrap();
        prop_assert_eq!(q.len(), p.len());
        for i in 0..p.len() {
            prop_assert_eq!(p.point(i), q.point(i));
        }
        prop_assert_eq!(q.to_text(), text);
    }

    // inclusion monotonicity: shrinking the input box never widens the
    // enclosure, including down to a point box at the midpoint
    #[test]
    fn interval_refinement_never_widens(
        lo1 in 2.52f64..2.78,
        los in prop::array::uniform5(2.0f64..2.47),
        ws in prop::array::uniform6(0.0f64..0.02),
    ) {
        let mut parent: Box6 = [Interval::point(0.0); 6];
        parent[0] = Interval::new(lo1, lo1 + ws[0]);
        for i in 0..5 {
            parent[i + 1] = Interval::new(los[i], los[i] + ws[i + 1]);
        }
        prop_assume!(funcs::delta_x(&funcs::squares(&parent)).lo > 0.0);

        let widest = (0..6)
            .max_by(|&i, &j| {
                parent[i]
                    .width()
                    .partial_cmp(&parent[j].width())
                    .unwrap()
            })
            .unwrap();
        let mid = parent[widest].midpoint();
        let mut left = parent;
        left[widest] = Interval::new(parent[widest].lo, mid);
        let mut right = parent;
        right[widest] = Interval::new(mid, parent[widest].hi);
        let mut center = parent;
        for v in center.iter_mut() {
            *v = Interval::point(v.midpoint());
        }

        for f in [funcs::vor, funcs::dihedral, funcs::solid_angle] {
            let fp = f(&parent);
            prop_assume!(fp.lo.is_finite() && fp.hi.is_finite());
            for child in [&left, &right, &center] {
                let fc = f(child);
                prop_assert!(
                    fc.lo >= fp.lo && fc.hi <= fp.hi,
                    "child [{}, {}] escapes parent [{}, {}]",
                    fc.lo,
                    fc.hi,
                    fp.lo,
                    fp.hi
                );
            }
        }
    }
}
