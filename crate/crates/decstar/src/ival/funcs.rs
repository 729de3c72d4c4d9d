//! Interval counterparts of the simplex and scoring formulas.
//!
//! Each function mirrors its floating-point namesake in `geom`/`score`
//! term by term, so evaluating it on a box of edge lengths encloses every
//! value the floating-point function can take on that box, up to the
//! latter's own rounding.  Where the floating-point code branches on a
//! comparison (truncation corners, existence guards, the Γ/vor switch),
//! the interval version takes the branch when the box decides it and the
//! hull of both outcomes when it does not.

use super::interval::Interval;
use crate::geom::Face;

/// Box of six edge lengths `[y1..y6]`.
pub type Box6 = [Interval; 6];

/// Reflection swapping the two simplices that share edge 1 as a diagonal.
pub const HAT_PERM: [usize; 6] = [0, 5, 4, 3, 2, 1];

/// The four ways of seating a quarter on its diagonal.
pub const PLACEMENT_PERMS: [[usize; 6]; 4] = [
    [0, 1, 2, 3, 4, 5],
    [0, 5, 4, 3, 2, 1],
    [1, 5, 3, 4, 2, 0],
    [2, 4, 3, 5, 1, 0],
];

/// Relabeling that moves edge 2 into the edge-1 slot.
pub const DIH2_PERM: [usize; 6] = [1, 0, 2, 4, 3, 5];

/// Relabeling that moves edge 3 into the edge-1 slot.
pub const DIH3_PERM: [usize; 6] = [2, 0, 1, 5, 3, 4];

pub fn relabel(y: &Box6, perm: [usize; 6]) -> Box6 {
    std::array::from_fn(|i| y[perm[i]])
}

pub fn hat(y: &Box6) -> Box6 {
    relabel(y, HAT_PERM)
}

pub fn squares(y: &Box6) -> Box6 {
    y.map(Interval::square)
}

/// Cayley–Menger-style volume polynomial in the squared lengths.
pub fn delta_x(x: &Box6) -> Interval {
    let [x1, x2, x3, x4, x5, x6] = *x;
    x1 * x4 * (x2 + x3 + x5 + x6 - x1 - x4)
        + x2 * x5 * (x1 + x3 + x4 + x6 - x2 - x5)
        + x3 * x6 * (x1 + x2 + x4 + x5 - x3 - x6)
        - x2 * x3 * x4
        - x1 * x3 * x5
        - x1 * x2 * x6
        - x4 * x5 * x6
}

/// Partial derivative of `delta_x` with respect to `x4`.
pub fn delta4_x(x: &Box6) -> Interval {
    let [x1, x2, x3, x4, x5, x6] = *x;
    x1 * (x2 + x3 + x5 + x6 - x1 - 2.0 * x4) + x2 * x5 + x3 * x6 - x2 * x3 - x5 * x6
}

/// Triangle polynomial `u` in the squared side lengths; positive exactly
/// on nondegenerate triangles.
pub fn u_x(a: Interval, b: Interval, c: Interval) -> Interval {
    2.0 * (a * b + a * c + b * c) - a.square() - b.square() - c.square()
}

/// Circumradius of the triangle with side lengths `a, b, c`.
pub fn eta(a: Interval, b: Interval, c: Interval) -> Interval {
    let u = u_x(a.square(), b.square(), c.square());
    (a * b * c) / u.sqrt()
}

/// Dihedral angle along edge 1, as an enclosure within `[0, π]`.
pub fn dihedral(y: &Box6) -> Interval {
    let x = squares(y);
    let den = (4.0 * x[0] * delta_x(&x)).sqrt();
    let raw = Interval::half_pi() + (-delta4_x(&x) / den).atan();
    let range = Interval::new(0.0, Interval::pi().hi);
    raw.intersect(range).unwrap_or(range)
}

/// Solid angle at the corner joining edges 1, 2, 3.
pub fn solid_angle(y: &Box6) -> Interval {
    dihedral(y) + dihedral(&relabel(y, DIH2_PERM)) + dihedral(&relabel(y, DIH3_PERM))
        - Interval::pi()
}

/// Signed height of the circumcenter over the plane of the face spanned
/// by edges 1, 2, 6 (positive on the side of vertex 3).
pub fn circumheight(y: &Box6) -> Interval {
    let x = squares(y);
    let y1 = y[0];
    let px = (x[0] + x[1] - x[5]) / (2.0 * y1);
    let u126 = u_x(x[0], x[1], x[5]);
    let py = u126.sqrt() / (2.0 * y1);
    let qx = (x[0] + x[2] - x[4]) / (2.0 * y1);
    let qy = (x[1] + x[2] - x[3] - 2.0 * px * qx) / (2.0 * py);
    let qz = (delta_x(&x) / u126).sqrt();
    let ccy = (x[1] - px * y1) / (2.0 * py);
    (x[2] - qx * y1 - 2.0 * qy * ccy) / (2.0 * qz)
}

/// Circumcenter height over an arbitrary face.
pub fn face_height(y: &Box6, f: Face) -> Interval {
    circumheight(&relabel(y, f.canonical_perm()))
}

/// Density offset of the regular octahedron.
pub fn delta_oct() -> Interval {
    (Interval::pi() - 4.0 * (Interval::sqrt2() / 5.0).atan()) / Interval::sqrt8()
}

/// The scoring unit: excess of the regular tetrahedron over the octahedral
/// density.
pub fn pt() -> Interval {
    4.0 * (Interval::sqrt2() / 5.0).atan() - Interval::pi() / 3.0
}

/// Truncation radius used by the truncated cell score.
pub fn t0() -> Interval {
    Interval::point(1.255)
}

/// The analytic cell score (volume and solid-angle form).
pub fn vor(y: &Box6) -> Interval {
    let sol = solid_angle(y);
    let mut vol = Interval::ZERO;
    for f in [Face::E126, Face::E135, Face::E234] {
        let p = relabel(y, f.canonical_perm());
        let x = squares(&p);
        let d = circumheight(&p);
        let u = u_x(x[0], x[1], x[5]);
        let fsum =
            (x[0] * (x[1] + x[5] - x[0]) + x[1] * (x[0] + x[5] - x[1])) / (4.0 * u.sqrt());
        vol = vol + d * fsum / 6.0;
    }
    4.0 * (sol / 3.0 - delta_oct() * vol)
}

/// Average of the analytic score over the four seatings of a quarter.
pub fn gamma(y: &Box6) -> Interval {
    let mut sum = Interval::ZERO;
    for perm in PLACEMENT_PERMS {
        sum = sum + vor(&relabel(y, perm));
    }
    sum / 4.0
}

/// Density interpolation weight.
pub fn phi(h: Interval, t: Interval) -> Interval {
    2.0 * (2.0 - delta_oct() * h * t * (h + t)) / 3.0
}

/// `phi` at the truncation radius paired with itself.
pub fn phi0() -> Interval {
    phi(t0(), t0())
}

/// Guarded contribution: zero outside `lo < mid < hi`, the term inside,
/// and the hull of both when the box straddles the guard.
fn gated(lo: Interval, mid: Interval, hi: Interval, term: impl FnOnce() -> Interval) -> Interval {
    if lo.lo >= mid.hi || mid.lo >= hi.hi {
        return Interval::ZERO;
    }
    let t = term();
    if lo.hi < mid.lo && mid.hi < hi.lo {
        t
    } else {
        t.hull(Interval::ZERO)
    }
}

/// Wedge of a ball cut by two planes meeting t-truncated cells; zero
/// unless `0 < a < b < c`.
pub fn quoin(a: Interval, b: Interval, c: Interval) -> Interval {
    if a.hi <= 0.0 {
        return Interval::ZERO;
    }
    gated(a, b, c, || {
        let aa = a.square();
        let bb = b.square();
        let cc = c.square();
        let q = (bb - aa).sqrt();
        let r = (cc - bb).sqrt();
        let t1 = (a + 2.0 * c) * (c - a).square() * (r / q).atan();
        let t2 = a * q * r;
        let t3 = 4.0 * c.cube() * (r * ((b - a) / (b + a)).sqrt() / (b + c)).atan();
        (t1 + t2 - t3) / 6.0
    })
}

/// Volume of the Rogers simplex `R(a, b, c)`.
pub fn rogers_volume(a: Interval, b: Interval, c: Interval) -> Interval {
    let q = (b.square() - a.square()).sqrt();
    let r = (c.square() - b.square()).sqrt();
    a * q * r / 6.0
}

/// Solid angle of the Rogers simplex at its sphere corner.
pub fn rogers_solid_angle(a: Interval, b: Interval, c: Interval) -> Interval {
    let q = (b.square() - a.square()).sqrt();
    let r = (c.square() - b.square()).sqrt();
    2.0 * (q * r / ((a + b) * (b + c))).atan()
}

/// Dihedral angle of the Rogers simplex along its `a`-axis.
pub fn rogers_dihedral(a: Interval, b: Interval, c: Interval) -> Interval {
    let q = (b.square() - a.square()).sqrt();
    let r = (c.square() - b.square()).sqrt();
    let range = Interval::new(0.0, Interval::half_pi().hi);
    (r / q).atan().intersect(range).unwrap_or(range)
}

/// Score of the Rogers simplex.
pub fn rogers_score(a: Interval, b: Interval, c: Interval) -> Interval {
    4.0 * (rogers_solid_angle(a, b, c) / 3.0 - delta_oct() * rogers_volume(a, b, c))
}

/// Truncated cell score of a simplex at radius `t`.
pub fn vor_trunc(y: &Box6, t: Interval) -> Interval {
    let phit = phi(t, t);
    let mut out = solid_angle(y) * phit;
    let dihs = [
        dihedral(y),
        dihedral(&relabel(y, DIH2_PERM)),
        dihedral(&relabel(y, DIH3_PERM)),
    ];
    for k in 0..3 {
        let h = y[k] / 2.0;
        if h.lo >= t.hi {
            continue;
        }
        let term = dihs[k] * (1.0 - h / t) * (phi(h, t) - phit);
        if h.hi <= t.lo {
            out = out + term;
        } else {
            out = out + term.hull(Interval::ZERO);
        }
    }
    for (i, j, l) in [(0, 1, 5), (0, 2, 4), (1, 2, 3)] {
        let b = eta(y[i], y[j], y[l]);
        let q = quoin(y[i] / 2.0, b, t) + quoin(y[j] / 2.0, b, t);
        out = out - 4.0 * delta_oct() * q;
    }
    out
}

/// Truncated cell score at the standard radius.
pub fn vor0(y: &Box6) -> Interval {
    vor_trunc(y, t0())
}

/// Circumradius of the isosceles triangle `(2h, 2, 2.51)`.
pub fn eta0(h: Interval) -> Interval {
    eta(2.0 * h, Interval::point(2.0), Interval::point(2.51))
}

/// Score correction of the spherical crown left above height `h`.
pub fn crown(h: Interval) -> Interval {
    let e0 = eta0(h);
    Interval::two_pi() * (1.0 - h / e0) * (phi(h, e0) - phi0())
}

/// Score of the full cone over the crown at height `h`.
pub fn cone_score(h: Interval) -> Interval {
    let e0 = eta0(h);
    Interval::two_pi() * (1.0 - h / e0) * phi(h, e0)
}

/// Dihedral angle of a wedge with legs `q` (in-face) and `r` (outward)
/// along its spine: `atan(r/q)`, intersected with the complementary form
/// `pi/2 - atan(q/r)` so that a leg touching zero still gives a one-sided
/// tight bound.
fn wedge_dihedral(q: Interval, r: Interval) -> Interval {
    let range = Interval::new(0.0, Interval::half_pi().hi);
    let mut out = range;
    if q.lo > 0.0 {
        out = (r / q).atan().intersect(out).unwrap_or(range);
    }
    if r.lo > 0.0 {
        let alt = Interval::half_pi() - (q / r).atan();
        out = alt.intersect(out).unwrap_or(range);
    }
    out
}

/// Enclosure of `atan(g) - g` for `g >= 0` via the integral bracket
/// `-(g^3)/3 <= atan(g) - g <= -(g^3)/(3(1+g^2))`.
fn atan_remainder(g: Interval) -> Interval {
    let g3 = g.cube();
    (-g3 / 3.0).hull(-g3 / (3.0 * (1.0 + g.square())))
}

/// Combined solid-angle and volume contribution of one Rogers wedge,
/// `cc * sol(R) - 4 delta_oct vol(R)` with `cc = 4/3 - phi0`: the two
/// pieces nearly cancel, so they are regrouped around the arctangent
/// remainder, leaving the difference of the leading coefficients in point
/// arithmetic where the cancellation is harmless.
fn wedge_core(a: Interval, q: Interval, r: Interval, d: Interval, cc: Interval) -> Interval {
    let qr = q * r;
    let g = (qr / d).max_i(Interval::ZERO);
    2.0 * cc * atan_remainder(g) + qr * (2.0 * cc / d - 2.0 * delta_oct() * a / 3.0)
}

/// Anchor correction to the crown along the edge `(y1, y2, y6)`.
///
/// Equal to the sum over the two Rogers wedges `R_i = R(y_i/2, b, c)`,
/// `b = eta(y1, y2, y6)`, `c = eta0(y1/2)`, of
/// `-dih(R_i) w_i - sol(R_i) phi0 + score(R_i)` (each wedge contributing
/// only when `y_i/2 < b < c`), but evaluated through exact factorizations
/// that keep the natural interval extension tight:
/// * `b^2 - (y_i/2)^2 = x_i (x_j + x_6 - x_i)^2 / (4u)`, so the wedge leg
///   `q_i` is a quotient of polynomials with one sign-definite linear
///   factor, and the gate is the sign of that factor instead of a
///   cancelling comparison of circumradii;
/// * `u = 4 x_2 x_6 - (x_2 + x_6 - x_1)^2` and likewise for the isosceles
///   face behind `eta0`, collapsing each triangle polynomial around its
///   dominant monomial;
/// * the outward leg `r^2 = c^2 - b^2` keeps its two fractions separate so
///   the only subtraction is between nearly independent quantities;
/// * the near-cancelling solid-angle and volume terms go through
///   [`wedge_core`].
pub fn anc(y1: Interval, y2: Interval, y6: Interval) -> Interval {
    let x1 = y1.square();
    let x2 = y2.square();
    let x6 = y6.square();
    let xt = Interval::point(2.51).square();
    let h = x2 * x6;
    let g1 = x2 + x6 - x1;
    let g2 = x1 + x6 - x2;
    let g0 = 4.0 + xt - x1;
    let u = 4.0 * h - g1.square();
    let u0 = 16.0 * xt - g0.square();
    let rsq = x1 * (4.0 * xt / u0 - 1.0 / (4.0 - g1.square() / h));
    if rsq.hi <= 0.0 {
        return Interval::ZERO;
    }
    let r = rsq.sqrt();
    let et = (x1 / (4.0 - g1.square() / h)).sqrt();
    let e0 = (4.0 * xt * x1 / u0).sqrt();
    let su = u.sqrt();
    let a1 = y1 / 2.0;
    let a2 = y2 / 2.0;
    let q1 = y1 * g1.max_i(Interval::ZERO) / (2.0 * su);
    let q2 = y2 * g2.max_i(Interval::ZERO) / (2.0 * su);
    let cc = Interval::point(4.0) / 3.0 - phi0();
    let lcrown = (1.0 - a1 / e0) * (phi(a1, e0) - phi0());
    let t1 = -wedge_dihedral(q1, r) * lcrown + wedge_core(a1, q1, r, (a1 + et) * (et + e0), cc);
    let l2 = (1.0 - y2 / 2.51) * (phi(a2, t0()) - phi0());
    let t2 = -wedge_dihedral(q2, r) * l2 + wedge_core(a2, q2, r, (a2 + et) * (et + e0), cc);
    let r_open = rsq.lo > 0.0;
    let first = if g1.hi <= 0.0 {
        Interval::ZERO
    } else if r_open && g1.lo > 0.0 {
        t1
    } else {
        t1.hull(Interval::ZERO)
    };
    let second = if g2.hi <= 0.0 {
        Interval::ZERO
    } else if r_open && g2.lo > 0.0 {
        t2
    } else {
        t2.hull(Interval::ZERO)
    };
    first + second
}

/// Half of the `K` correction attached to one face at the diagonal.
pub fn k0(y1: Interval, y2: Interval, y6: Interval) -> Interval {
    let et = eta(y1, y2, y6);
    let s2 = Interval::sqrt2();
    let a1 = y1 / 2.0;
    let first = gated(a1, et, s2, || {
        rogers_score(a1, et, s2)
            - rogers_dihedral(a1, et, s2) * (1.0 - y1 / Interval::sqrt8()) * phi(a1, s2)
    });
    let a2 = y2 / 2.0;
    let second = gated(a2, et, s2, || rogers_score(a2, et, s2));
    first + second
}

/// The `K` score of a simplex with its diagonal on edge 1.
pub fn k_score(y: &Box6) -> Interval {
    k0(y[0], y[1], y[5])
        + k0(y[0], y[2], y[4])
        + dihedral(y) * (1.0 - y[0] / Interval::sqrt8()) * phi(y[0] / 2.0, Interval::sqrt2())
}

/// Larger circumradius of the two faces flanking the diagonal (edge 1).
pub fn eta_plus(y: &Box6) -> Interval {
    eta(y[0], y[1], y[5]).max_i(eta(y[0], y[2], y[4]))
}

/// Quarter score: Γ when both diagonal faces have small circumradius, the
/// analytic score when either is large, and the hull when the box
/// straddles the switch.
pub fn mu(y: &Box6) -> Interval {
    let ep = eta_plus(y);
    let s2 = Interval::sqrt2();
    if ep.hi <= s2.lo {
        gamma(y)
    } else if ep.lo > s2.hi {
        vor(y)
    } else {
        gamma(y).hull(vor(y))
    }
}

/// Distance between the apexes of the two simplices sharing the far face
/// (edges 4, 5, 6), placed on opposite sides; `opposite` holds the second
/// apex's distances to vertices 1, 2, 3.
pub fn edist(y: &Box6, opposite: [Interval; 3]) -> Interval {
    let x = squares(y);
    let y6 = y[5];
    let cx = (x[4] + x[5] - x[3]) / (2.0 * y6);
    let u456 = u_x(x[3], x[4], x[5]);
    let cy = u456.sqrt() / (2.0 * y6);
    let apex = |d1: Interval, d2: Interval, d3: Interval| {
        let px = (d1.square() + x[5] - d2.square()) / (2.0 * y6);
        let py = (d1.square() - d3.square() + cx.square() + cy.square() - 2.0 * px * cx)
            / (2.0 * cy);
        let pz = (d1.square() - px.square() - py.square()).sqrt();
        (px, py, pz)
    };
    let p = apex(y[0], y[1], y[2]);
    let q = apex(opposite[0], opposite[1], opposite[2]);
    let dx = p.0 - q.0;
    let dy = p.1 - q.1;
    let dz = p.2 + q.2;
    (dx.square() + dy.square() + dz.square()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::EdgeSimplex;
    use crate::score;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn point_box(y: [f64; 6]) -> Box6 {
        y.map(Interval::point)
    }

    /// Containment of a floating-point result, allowing for its own
    /// rounding error.
    fn encloses(iv: Interval, v: f64, slack: f64) -> bool {
        iv.lo - slack <= v && v <= iv.hi + slack
    }

    #[test]
    fn named_constants_are_enclosed() {
        assert!(encloses(pt(), 0.055_373_645_668_463_92, 1e-15));
        assert!(encloses(delta_oct(), 0.720_902_949_517_465_1, 1e-15));
        assert!(encloses(phi0(), -0.566_636_547_893_333_8, 1e-15));
        assert!(pt().width() < 1e-14);
        assert!(delta_oct().width() < 1e-14);
    }

    #[test]
    fn frozen_scores_are_enclosed_at_point_boxes() {
        let y = point_box([2.1, 2.05, 2.2, 2.15, 2.3, 2.1]);
        let v = vor(&y);
        assert!(encloses(v, -0.087_302_998_929_389_53, 1e-12), "{v}");
        assert!(v.width() < 1e-11);

        let q = point_box([2.6, 2.0, 2.1, 2.2, 2.3, 2.05]);
        assert!(encloses(gamma(&q), -0.135_695_597_731_721_82, 1e-12));
        assert!(encloses(vor(&q), -0.103_869_694_874_459_74, 1e-12));
        assert!(encloses(vor0(&q), -0.076_765_802_438_567_18, 1e-12));
        assert!(encloses(vor0(&hat(&q)), -0.115_416_240_578_321_26, 1e-12));

        let k = point_box([2.2, 2.6, 2.6, 2.2, 2.2, 2.2]);
        assert!(encloses(k_score(&k), -0.194_015_467_137_568_18, 1e-12));
        let k2 = point_box([2.2, 2.2, 2.6, 2.7, 2.1, 2.2]);
        assert!(encloses(k_score(&k2), -0.196_882_563_870_745_15, 1e-12));
    }

    #[test]
    fn frozen_crown_cone_and_anchor_values_are_enclosed() {
        assert!(encloses(
            crown(Interval::point(1.255)),
            -0.137_844_696_270_253_11,
            1e-12
        ));
        assert!(encloses(
            cone_score(Interval::sqrt2()),
            -0.250_289_741_377_207_55,
            1e-12
        ));
        assert!(encloses(
            cone_score(Interval::point(1.255)),
            -0.432_604_017_622_395_03,
            1e-12
        ));
        assert!(encloses(
            anc(Interval::sqrt8(), Interval::point(2.0), Interval::point(2.0)),
            -0.012_623_447_308_262_73,
            1e-11
        ));
        assert!(encloses(
            anc(
                Interval::point(2.7),
                Interval::point(2.2),
                Interval::point(2.2)
            ),
            -0.003_742_125_567_134_335,
            1e-11
        ));
    }

    #[test]
    fn frozen_quoin_and_rogers_values_are_enclosed() {
        let q = quoin(
            Interval::point(1.0),
            2.0 / Interval::point(3.0).sqrt(),
            Interval::sqrt2(),
        );
        assert!(encloses(q, 0.022_950_728_054_475_25, 1e-13), "{q}");
        let q2 = quoin(
            Interval::point(1.1),
            Interval::point(1.3),
            Interval::point(1.41),
        );
        assert!(encloses(q2, 0.002_686_496_853_400_740_3, 1e-13));

        let (a, b, c) = (
            Interval::point(1.0),
            Interval::point(1.15),
            Interval::point(1.3),
        );
        assert!(encloses(rogers_score(a, b, c), 0.008_581_877_265_008_586, 1e-13));
        assert!(encloses(
            rogers_solid_angle(a, b, c),
            0.130_527_423_251_786_6,
            1e-13
        ));
        assert!(encloses(
            rogers_dihedral(a, b, c),
            0.818_030_019_210_395_3,
            1e-13
        ));
    }

    #[test]
    fn quoin_vanishes_outside_its_existence_range() {
        assert_eq!(
            quoin(
                Interval::point(1.3),
                Interval::point(1.2),
                Interval::sqrt2()
            ),
            Interval::ZERO
        );
        assert_eq!(
            quoin(
                Interval::point(1.0),
                Interval::point(1.5),
                Interval::point(1.4)
            ),
            Interval::ZERO
        );
        // straddling the guard keeps zero inside the enclosure
        let s = quoin(
            Interval::point(1.0),
            Interval::new(0.9, 1.1),
            Interval::sqrt2(),
        );
        assert!(s.contains(0.0));
    }

    fn random_lengths(rng: &mut ChaCha8Rng, dom: &[[f64; 2]; 6]) -> [f64; 6] {
        std::array::from_fn(|i| rng.gen_range(dom[i][0]..=dom[i][1]))
    }

    #[test]
    fn point_boxes_enclose_the_floating_point_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let quarter = [
            [2.51, 2.828],
            [2.0, 2.51],
            [2.0, 2.51],
            [2.0, 2.51],
            [2.0, 2.51],
            [2.0, 2.51],
        ];
        let qrtet = [[2.0, 2.51]; 6];
        let mut checked = 0;
        for k in 0..600 {
            let dom = if k % 2 == 0 { &quarter } else { &qrtet };
            let y = random_lengths(&mut rng, dom);
            let Ok(s) = EdgeSimplex::new(y) else { continue };
            if s.is_degenerate() {
                continue;
            }
            let b = point_box(y);
            checked += 1;
            assert!(encloses(dihedral(&b), s.dihedral().unwrap(), 1e-9));
            assert!(encloses(solid_angle(&b), s.solid_angle().unwrap(), 1e-9));
            assert!(encloses(vor(&b), score::vor_analytic(&s).unwrap(), 1e-9));
            assert!(encloses(gamma(&b), score::gamma(&s).unwrap(), 1e-9));
            assert!(encloses(vor0(&b), score::vor0(&s).unwrap(), 1e-9));
            if k % 2 == 0 {
                assert!(encloses(mu(&b), score::mu(&s).unwrap(), 1e-9));
                assert!(encloses(k_score(&b), score::k_score(&s).unwrap(), 1e-9));
                let a = score::anc(y[0], y[1], y[5]).unwrap();
                assert!(encloses(anc(b[0], b[1], b[5]), a, 1e-9));
            }
        }
        assert!(checked > 500);
    }

    #[test]
    fn wider_boxes_contain_their_point_sections() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..60 {
            let lo: [f64; 6] = std::array::from_fn(|_| rng.gen_range(2.0..2.4));
            let w: f64 = rng.gen_range(0.0..0.1);
            let boxed: Box6 = std::array::from_fn(|i| Interval::new(lo[i], lo[i] + w));
            let mid: [f64; 6] = std::array::from_fn(|i| lo[i] + 0.5 * w);
            let Ok(s) = EdgeSimplex::new(mid) else { continue };
            assert!(encloses(vor(&boxed), score::vor_analytic(&s).unwrap(), 1e-9));
            assert!(encloses(vor0(&boxed), score::vor0(&s).unwrap(), 1e-9));
            assert!(encloses(solid_angle(&boxed), s.solid_angle().unwrap(), 1e-9));
        }
    }

    #[test]
    fn apex_distance_matches_the_floating_point_form() {
        let s = EdgeSimplex::new([2.0, 2.0, 2.0, 2.51, 2.51, 8.0_f64.sqrt()]).unwrap();
        let v = s.edist([2.0, 2.0, 2.0]).unwrap();
        let b = point_box(s.lengths());
        let iv = edist(&b, [Interval::point(2.0); 3]);
        assert!(encloses(iv, v, 1e-10), "{iv} vs {v}");
        assert!(iv.width() < 1e-9);
        assert!(encloses(iv, 2.601_862_616_410_152, 1e-11));
    }

    #[test]
    fn dihedral_enclosure_survives_degenerate_boxes() {
        // a box wide enough that the volume polynomial straddles zero
        let b: Box6 = [
            Interval::new(2.0, 2.828),
            Interval::new(2.0, 2.828),
            Interval::new(2.0, 2.828),
            Interval::new(2.0, 2.828),
            Interval::new(2.0, 2.828),
            Interval::new(2.0, 2.828),
        ];
        let d = dihedral(&b);
        assert!(d.lo >= 0.0 && d.hi <= Interval::pi().hi);
        let v = vor_trunc(&b, t0());
        assert!(v.lo <= v.hi);
    }

    #[test]
    fn hat_and_placement_permutations_match_the_geometry() {
        let y = [2.6, 2.0, 2.1, 2.2, 2.3, 2.05];
        let s = EdgeSimplex::new(y).unwrap();
        let b = point_box(y);
        assert_eq!(
            hat(&b).map(|v| v.lo),
            s.hat().lengths(),
            "hat permutation disagrees"
        );
        for (perm, placed) in PLACEMENT_PERMS.iter().zip(s.placements().iter()) {
            assert_eq!(relabel(&b, *perm).map(|v| v.lo), placed.lengths());
        }
    }
}
