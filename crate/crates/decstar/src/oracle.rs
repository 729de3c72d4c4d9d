//! Slow, independent reference implementations.
//!
//! Everything here recomputes a quantity of the fast path from first
//! principles — exact polytope clipping for cell volumes, quadrature for
//! the wedge integral, a sign-by-sign Rogers decomposition for the
//! analytic score — so tests can compare two derivations that share no
//! code.  Nothing in this module is used by the production paths.

use crate::constants;
use crate::geom::vec3::{cross, dot, norm, scale, sub, V3};
use crate::geom::{eta, EdgeSimplex};

/// Volume of the tetrahedron spanned by four points.
pub fn tetra_volume(p: [V3; 4]) -> f64 {
    let a = sub(p[1], p[0]);
    let b = sub(p[2], p[0]);
    let c = sub(p[3], p[0]);
    dot(a, cross(b, c)).abs() / 6.0
}

/// Circumcenter of the tetrahedron (origin, v1, v2, v3).
pub fn circumcenter(v1: V3, v2: V3, v3: V3) -> V3 {
    // solve 2 V c = (|v_i|^2) by Cramer's rule
    let rows = [v1, v2, v3];
    let rhs = [
        dot(v1, v1) / 2.0,
        dot(v2, v2) / 2.0,
        dot(v3, v3) / 2.0,
    ];
    let det = dot(rows[0], cross(rows[1], rows[2]));
    let dx = dot(
        [rhs[0], rows[0][1], rows[0][2]],
        cross(
            [rhs[1], rows[1][1], rows[1][2]],
            [rhs[2], rows[2][1], rows[2][2]],
        ),
    );
    // components via replacement determinants
    let rep = |k: usize| {
        let mut m = rows;
        for i in 0..3 {
            m[i][k] = rhs[i];
        }
        dot(m[0], cross(m[1], m[2]))
    };
    let _ = dx;
    [rep(0) / det, rep(1) / det, rep(2) / det]
}

/// A halfspace `n . x <= b`.
#[derive(Debug, Clone, Copy)]
pub struct Halfspace {
    pub n: V3,
    pub b: f64,
}

fn clip_tetra(t: [V3; 4], h: Halfspace, out: &mut Vec<[V3; 4]>) {
    const EPS: f64 = 1e-12;
    let d: Vec<f64> = t.iter().map(|&p| dot(h.n, p) - h.b).collect();
    let inside: Vec<usize> = (0..4).filter(|&i| d[i] <= EPS).collect();
    let outside: Vec<usize> = (0..4).filter(|&i| d[i] > EPS).collect();
    let cut = |i: usize, j: usize| -> V3 {
        let t_param = d[i] / (d[i] - d[j]);
        [
            t[i][0] + t_param * (t[j][0] - t[i][0]),
            t[i][1] + t_param * (t[j][1] - t[i][1]),
            t[i][2] + t_param * (t[j][2] - t[i][2]),
        ]
    };
    match inside.len() {
        0 => {}
        4 => out.push(t),
        1 => {
            let a = inside[0];
            let [p, q, r] = [outside[0], outside[1], outside[2]];
            out.push([t[a], cut(a, p), cut(a, q), cut(a, r)]);
        }
        3 => {
            // everything except the small tetrahedron at the outside vertex
            let dvx = outside[0];
            let [a, b, c] = [inside[0], inside[1], inside[2]];
            let ad = cut(a, dvx);
            let bd = cut(b, dvx);
            let cd = cut(c, dvx);
            out.push([t[a], t[b], t[c], ad]);
            out.push([t[b], t[c], ad, bd]);
            out.push([t[c], ad, bd, cd]);
        }
        2 => {
            let [a, b] = [inside[0], inside[1]];
            let [p, q] = [outside[0], outside[1]];
            let ap = cut(a, p);
            let aq = cut(a, q);
            let bp = cut(b, p);
            let bq = cut(b, q);
            out.push([t[a], t[b], ap, aq]);
            out.push([t[b], ap, aq, bq]);
            out.push([t[b], ap, bp, bq]);
        }
        _ => unreachable!(),
    }
}

/// Volume of a tetrahedron intersected with a set of halfspaces, by exact
/// recursive clipping into sub-tetrahedra.
pub fn clipped_tetra_volume(t: [V3; 4], planes: &[Halfspace]) -> f64 {
    let mut current = vec![t];
    for &h in planes {
        let mut next = Vec::new();
        for piece in current {
            clip_tetra(piece, h, &mut next);
        }
        current = next;
    }
    current.into_iter().map(tetra_volume).sum()
}

/// Volume of the true Voronoi piece at the origin inside the simplex:
/// the simplex intersected with the three bisector halfspaces toward its
/// other vertices.
pub fn voronoi_piece_volume(s: &EdgeSimplex) -> f64 {
    let r = s.realize().expect("oracle needs a nondegenerate simplex");
    let planes: Vec<Halfspace> = [r.v1, r.v2, r.v3]
        .iter()
        .map(|&v| Halfspace {
            n: v,
            b: dot(v, v) / 2.0,
        })
        .collect();
    clipped_tetra_volume([[0.0; 3], r.v1, r.v2, r.v3], &planes)
}

/// Voronoi score computed from the exactly clipped cell piece.  Equals the
/// analytic score when every face of the simplex is positively oriented.
pub fn clipped_cell_score(s: &EdgeSimplex) -> f64 {
    let vol = voronoi_piece_volume(s);
    let sol = s.solid_angle().expect("oracle needs a nondegenerate simplex");
    4.0 * (-constants::delta_oct() * vol + sol / 3.0)
}

/// The analytic Voronoi score by the sign-by-sign Rogers decomposition:
/// per origin face, per origin edge, a piece `s1 * s2 * a q r / 6` where
/// the magnitudes come from circumradii and the signs from explicit side
/// tests against the coordinate circumcenter.  Independent of the closed
/// form used by the fast path.
pub fn signed_rogers_score(s: &EdgeSimplex) -> f64 {
    let r = s.realize().expect("oracle needs a nondegenerate simplex");
    let verts = [r.v1, r.v2, r.v3];
    let y = s.lengths();
    let cc = circumcenter(r.v1, r.v2, r.v3);
    let rad = s.circumradius().expect("oracle needs a nondegenerate simplex");
    // faces at the origin: vertex index pair and 1-based edge triple
    let faces: [((usize, usize), (usize, usize, usize)); 3] =
        [((0, 1), (1, 2, 6)), ((0, 2), (1, 3, 5)), ((1, 2), (2, 3, 4))];
    let mut vol = 0.0;
    for ((ia, ib), (e1, e2, e3)) in faces {
        let a = verts[ia];
        let b = verts[ib];
        let bb = eta(y[e1 - 1], y[e2 - 1], y[e3 - 1]).expect("face triangle degenerate");
        let n = normalize_or_zero(cross(a, b));
        let other = verts[3 - ia - ib];
        let s2 = sgn(dot(cc, n) * dot(other, n));
        for e_at in [e1, e2] {
            let aa = y[e_at - 1] / 2.0;
            let ej = if e_at == e1 { e2 } else { e1 };
            let ek = e3;
            let s1 = sgn(
                y[ej - 1] * y[ej - 1] + y[ek - 1] * y[ek - 1] - y[e_at - 1] * y[e_at - 1],
            );
            let qq = (bb * bb - aa * aa).max(0.0).sqrt();
            let rr = (rad * rad - bb * bb).max(0.0).sqrt();
            vol += s1 * s2 * aa * qq * rr / 6.0;
        }
    }
    let sol = s.solid_angle().expect("oracle needs a nondegenerate simplex");
    4.0 * (-constants::delta_oct() * vol + sol / 3.0)
}

fn sgn(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn normalize_or_zero(v: V3) -> V3 {
    let n = norm(v);
    if n == 0.0 {
        [0.0; 3]
    } else {
        scale(v, 1.0 / n)
    }
}

/// The wedge integral behind `quoin(a, b, c)`, by 1-D Simpson quadrature
/// over x with the inner y-integral in closed form.  The region is
/// `x >= a`, `y >= (q/a) x`, `0 <= z <= (r/q) y`, `|p| <= c` in the
/// orthoscheme frame, with `q = sqrt(b^2-a^2)`, `r = sqrt(c^2-b^2)`.
pub fn quoin_by_quadrature(a: f64, b: f64, c: f64, intervals: usize) -> f64 {
    if !(0.0 < a && a < b && b < c) {
        return 0.0;
    }
    let q = (b * b - a * a).sqrt();
    let r = (c * c - b * b).sqrt();
    let slope = r / q;
    let inner = |x: f64| -> f64 {
        let rr2 = c * c - x * x;
        if rr2 <= 0.0 {
            return 0.0;
        }
        let yhi = rr2.sqrt();
        let ylo = (q / a) * x;
        if ylo >= yhi {
            return 0.0;
        }
        // below ystar the cap is the plane z = slope*y, above it the sphere
        let ystar = (rr2 / (1.0 + slope * slope)).sqrt().clamp(ylo, yhi);
        let linear = slope * (ystar * ystar - ylo * ylo) / 2.0;
        let g = |y: f64| (y * (rr2 - y * y).max(0.0).sqrt() + rr2 * (y / yhi).asin()) / 2.0;
        linear + (g(yhi) - g(ystar))
    };
    let n = intervals.max(2) & !1;
    let hstep = (c - a) / n as f64;
    let mut acc = inner(a) + inner(c);
    for i in 1..n {
        let x = a + hstep * i as f64;
        acc += inner(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * hstep / 3.0
}
