//! Edge-length simplex kernel.
//!
//! A simplex is described by its six edge lengths `y1..y6`: `y1,y2,y3` run
//! from the distinguished vertex (placed at the origin) to vertices 1,2,3,
//! and `y4,y5,y6` are the opposite edges (`y4` joins vertices 2,3; `y5`
//! joins 1,3; `y6` joins 1,2).  Every quantity of interest — volume,
//! dihedral angles, solid angle, circumradius, face orientation — is a
//! closed-form function of the squared lengths through the polynomial
//! `delta` and its relatives, so no coordinates are needed except where a
//! canonical placement is explicitly requested.

use serde::Serialize;
use thiserror::Error;

/// Geometric failure modes. All scoring functions bubble these up.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate simplex: delta = {delta:.3e}")]
    DegenerateSimplex { delta: f64 },
    #[error("invalid edge length y{index} = {value}")]
    InvalidEdge { index: usize, value: f64 },
    #[error("degenerate triangle ({a}, {b}, {c})")]
    DegenerateTriangle { a: f64, b: f64, c: f64 },
    #[error("apex distances ({0}, {1}, {2}) do not reach over the shared face")]
    ImpossibleApex(f64, f64, f64),
}

/// Which side of a face's plane the circumcenter lies on, relative to the
/// vertex of the simplex opposite that face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Positive,
    Zero,
    Negative,
}

/// Coarse classification by edge-length ranges.
///
/// `diagonal` is the 1-based index of the unique long edge of a quarter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimplexClass {
    /// All six edges in `[2, 2.51]`.
    QuasiRegular,
    /// One edge in `(2.51, sqrt8]` touching the distinguished vertex.
    UprightQuarter { diagonal: usize },
    /// One edge in `(2.51, sqrt8]` away from the distinguished vertex.
    FlatQuarter { diagonal: usize },
    Other,
}

/// Faces of the simplex, named by the edges that span them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    /// Origin, vertex 1, vertex 2 (edges y1, y2, y6).
    E126,
    /// Origin, vertex 1, vertex 3 (edges y1, y3, y5).
    E135,
    /// Origin, vertex 2, vertex 3 (edges y2, y3, y4).
    E234,
    /// Vertices 1, 2, 3 (edges y4, y5, y6).
    E456,
}

impl Face {
    pub const ALL: [Face; 4] = [Face::E126, Face::E135, Face::E234, Face::E456];

    /// Permutation mapping this face into the `E126` position.
    pub(crate) fn canonical_perm(self) -> [usize; 6] {
        match self {
            Face::E126 => [0, 1, 2, 3, 4, 5],
            Face::E135 => [0, 2, 1, 3, 5, 4],
            Face::E234 => [1, 2, 0, 4, 5, 3],
            Face::E456 => [5, 4, 0, 2, 1, 3],
        }
    }

    /// 1-based indices of the three edges spanning the face.
    pub fn edges(self) -> [usize; 3] {
        match self {
            Face::E126 => [1, 2, 6],
            Face::E135 => [1, 3, 5],
            Face::E234 => [2, 3, 4],
            Face::E456 => [4, 5, 6],
        }
    }

    /// The two faces containing a given edge (1-based index).
    pub fn faces_of_edge(edge: usize) -> [Face; 2] {
        match edge {
            1 => [Face::E126, Face::E135],
            2 => [Face::E126, Face::E234],
            3 => [Face::E135, Face::E234],
            4 => [Face::E234, Face::E456],
            5 => [Face::E135, Face::E456],
            6 => [Face::E126, Face::E456],
            _ => panic!("edge index out of range: {edge}"),
        }
    }
}

/// Canonical coordinate placement of a simplex: the distinguished vertex at
/// the origin, vertex 1 on the positive x axis, vertex 2 in the upper half
/// of the xy plane.
#[derive(Debug, Clone, Copy)]
pub struct Realization {
    pub v1: [f64; 3],
    pub v2: [f64; 3],
    pub v3: [f64; 3],
}

impl Realization {
    pub fn vertices(&self) -> [[f64; 3]; 4] {
        [[0.0; 3], self.v1, self.v2, self.v3]
    }
}

/// The basic polynomial: 144 times the squared volume, as a function of the
/// six squared edge lengths.
pub fn delta_x(x: [f64; 6]) -> f64 {
    let [x1, x2, x3, x4, x5, x6] = x;
    x1 * x4 * (-x1 + x2 + x3 - x4 + x5 + x6)
        + x2 * x5 * (x1 - x2 + x3 + x4 - x5 + x6)
        + x3 * x6 * (x1 + x2 - x3 + x4 + x5 - x6)
        - x2 * x3 * x4
        - x1 * x3 * x5
        - x1 * x2 * x6
        - x4 * x5 * x6
}

/// Partial derivative of `delta_x` with respect to `x4`.
pub fn delta4_x(x: [f64; 6]) -> f64 {
    let [x1, x2, x3, x4, x5, x6] = x;
    x1 * (-x1 + x2 + x3 - 2.0 * x4 + x5 + x6) + x2 * x5 + x3 * x6 - x2 * x3 - x5 * x6
}

/// Triangle quantity `u`: 16 times the squared area, as a function of the
/// three squared side lengths.
pub fn u_x(a: f64, b: f64, c: f64) -> f64 {
    2.0 * (a * b + a * c + b * c) - a * a - b * b - c * c
}

/// Circumradius of the triangle with side lengths `a, b, c`.
pub fn eta(a: f64, b: f64, c: f64) -> Result<f64, GeomError> {
    let u = u_x(a * a, b * b, c * c);
    if !(u > 0.0) || !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(GeomError::DegenerateTriangle { a, b, c });
    }
    Ok(a * b * c / u.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSimplex {
    y: [f64; 6],
}

impl EdgeSimplex {
    /// Build from the six edge lengths. Lengths must be finite and positive;
    /// metric realizability is checked per-operation via `delta`.
    pub fn new(y: [f64; 6]) -> Result<Self, GeomError> {
        for (i, &v) in y.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(GeomError::InvalidEdge {
                    index: i + 1,
                    value: v,
                });
            }
        }
        Ok(EdgeSimplex { y })
    }

    pub fn lengths(&self) -> [f64; 6] {
        self.y
    }

    /// 1-based edge access.
    pub fn edge(&self, k: usize) -> f64 {
        self.y[k - 1]
    }

    pub fn squares(&self) -> [f64; 6] {
        let mut x = [0.0; 6];
        for i in 0..6 {
            x[i] = self.y[i] * self.y[i];
        }
        x
    }

    pub fn delta(&self) -> f64 {
        delta_x(self.squares())
    }

    /// Degeneracy threshold: `delta` at or below `1e-14 * scale^4` where
    /// `scale` is the largest edge length.
    pub fn degeneracy_threshold(&self) -> f64 {
        let scale = self.y.iter().fold(0.0_f64, |m, &v| m.max(v));
        1e-14 * scale.powi(4)
    }

    pub fn is_degenerate(&self) -> bool {
        self.delta() <= self.degeneracy_threshold()
    }

    fn checked_delta(&self) -> Result<f64, GeomError> {
        let d = self.delta();
        if d <= self.degeneracy_threshold() {
            Err(GeomError::DegenerateSimplex { delta: d })
        } else {
            Ok(d)
        }
    }

    /// Apply a 0-based index permutation: edge `k` of the result is edge
    /// `perm[k]` of `self`.
    pub fn relabel(&self, perm: [usize; 6]) -> EdgeSimplex {
        let mut y = [0.0; 6];
        for i in 0..6 {
            y[i] = self.y[perm[i]];
        }
        EdgeSimplex { y }
    }

    /// Re-root at the far end of edge 1 (swaps y2<->y6, y3<->y5).
    pub fn hat(&self) -> EdgeSimplex {
        self.relabel([0, 5, 4, 3, 2, 1])
    }

    /// The four simplices obtained by taking each vertex in turn as the
    /// distinguished one (self first, then the ends of edges 1, 2, 3).
    pub fn placements(&self) -> [EdgeSimplex; 4] {
        [
            *self,
            self.relabel([0, 5, 4, 3, 2, 1]),
            self.relabel([1, 5, 3, 4, 2, 0]),
            self.relabel([2, 4, 3, 5, 1, 0]),
        ]
    }

    pub fn volume(&self) -> Result<f64, GeomError> {
        Ok(self.checked_delta()?.sqrt() / 12.0)
    }

    /// Dihedral angle along edge 1.
    pub fn dihedral(&self) -> Result<f64, GeomError> {
        let x = self.squares();
        let d = self.checked_delta()?;
        Ok(std::f64::consts::FRAC_PI_2 + (-delta4_x(x) / (4.0 * x[0] * d).sqrt()).atan())
    }

    /// Dihedral angle along edge `k` for `k` in 1..=3.
    pub fn dihedral_edge(&self, k: usize) -> Result<f64, GeomError> {
        match k {
            1 => self.dihedral(),
            2 => self.relabel([1, 0, 2, 4, 3, 5]).dihedral(),
            3 => self.relabel([2, 0, 1, 5, 3, 4]).dihedral(),
            _ => panic!("dihedral_edge expects an origin edge 1..=3, got {k}"),
        }
    }

    /// Solid angle at the distinguished vertex.
    pub fn solid_angle(&self) -> Result<f64, GeomError> {
        Ok(self.dihedral_edge(1)? + self.dihedral_edge(2)? + self.dihedral_edge(3)?
            - std::f64::consts::PI)
    }

    /// Circumradius of the simplex.
    pub fn circumradius(&self) -> Result<f64, GeomError> {
        let x = self.squares();
        let d = self.checked_delta()?;
        let rho = -x[0] * x[0] * x[3] * x[3] - x[1] * x[1] * x[4] * x[4]
            - x[2] * x[2] * x[5] * x[5]
            + 2.0 * (x[0] * x[1] * x[3] * x[4] + x[0] * x[2] * x[3] * x[5] + x[1] * x[2] * x[4] * x[5]);
        Ok((rho / (4.0 * d)).sqrt())
    }

    /// Circumradius of a face.
    pub fn face_eta(&self, f: Face) -> Result<f64, GeomError> {
        let [a, b, c] = f.edges();
        eta(self.edge(a), self.edge(b), self.edge(c))
    }

    /// Canonical coordinates.
    pub fn realize(&self) -> Result<Realization, GeomError> {
        self.checked_delta()?;
        let y = self.y;
        let x = self.squares();
        let y1 = y[0];
        let px = (x[0] + x[1] - x[5]) / (2.0 * y1);
        let u126 = u_x(x[0], x[1], x[5]);
        if u126 <= 0.0 {
            return Err(GeomError::DegenerateTriangle {
                a: y[0],
                b: y[1],
                c: y[5],
            });
        }
        let py = u126.sqrt() / (2.0 * y1);
        let qx = (x[0] + x[2] - x[4]) / (2.0 * y1);
        let qy = (x[1] + x[2] - x[3] - 2.0 * px * qx) / (2.0 * py);
        // apex height over the base plane: delta / u of the base face
        let qz = (self.delta() / u126).sqrt();
        Ok(Realization {
            v1: [y1, 0.0, 0.0],
            v2: [px, py, 0.0],
            v3: [qx, qy, qz],
        })
    }

    /// Signed height of the circumcenter over the plane of face `E126`, in
    /// the canonical frame of `self` (positive on the side of vertex 3).
    pub(crate) fn circumcenter_height(&self) -> Result<f64, GeomError> {
        let r = self.realize()?;
        let x = self.squares();
        let [qx, qy, qz] = r.v3;
        let py = r.v2[1];
        let px = r.v2[0];
        // circumcenter (y1/2, ccy, d) from |cc| = |cc - v_i|
        let ccy = (x[1] - px * self.y[0]) / (2.0 * py);
        Ok((x[2] - qx * self.y[0] - 2.0 * qy * ccy) / (2.0 * qz))
    }

    /// Orientation of a face: sign of the circumcenter's side of the face
    /// plane, relative to the opposite vertex.  `Zero` within 1e-12.
    pub fn face_orientation(&self, f: Face) -> Result<Orientation, GeomError> {
        let d = self.relabel(f.canonical_perm()).circumcenter_height()?;
        Ok(if d > 1e-12 {
            Orientation::Positive
        } else if d < -1e-12 {
            Orientation::Negative
        } else {
            Orientation::Zero
        })
    }

    /// Classification by edge ranges; thresholds are closed as printed, with
    /// the all-short reading taking precedence at exactly 2.51.
    pub fn classify(&self) -> SimplexClass {
        let sqrt8 = 8.0_f64.sqrt();
        let short = |v: f64| (2.0..=2.51).contains(&v);
        let long = |v: f64| v > 2.51 && v <= sqrt8;
        if self.y.iter().all(|&v| short(v)) {
            return SimplexClass::QuasiRegular;
        }
        let longs: Vec<usize> = (0..6).filter(|&i| long(self.y[i])).collect();
        if longs.len() == 1 && (0..6).filter(|&i| short(self.y[i])).count() == 5 {
            let diagonal = longs[0] + 1;
            if diagonal <= 3 {
                return SimplexClass::UprightQuarter { diagonal };
            }
            return SimplexClass::FlatQuarter { diagonal };
        }
        SimplexClass::Other
    }

    /// 1-based index of the unique edge longer than 2.51, if any.
    pub fn diagonal_edge(&self) -> Option<usize> {
        match self.classify() {
            SimplexClass::UprightQuarter { diagonal } | SimplexClass::FlatQuarter { diagonal } => {
                Some(diagonal)
            }
            _ => None,
        }
    }

    /// Distance between the apex of this simplex and the apex of the
    /// adjacent simplex across the far face, placed on the opposite side.
    ///
    /// The far face (edges y4, y5, y6) is shared; `opposite` gives the
    /// distances from the second apex to vertices 1, 2, 3 in order.
    pub fn edist(&self, opposite: [f64; 3]) -> Result<f64, GeomError> {
        let y = self.y;
        let x = self.squares();
        let y6 = y[5];
        let cx = (x[4] + x[5] - x[3]) / (2.0 * y6);
        let u456 = u_x(x[3], x[4], x[5]);
        if u456 <= 0.0 {
            return Err(GeomError::DegenerateTriangle {
                a: y[3],
                b: y[4],
                c: y[5],
            });
        }
        let cy = u456.sqrt() / (2.0 * y6);
        let apex = |d1: f64, d2: f64, d3: f64| -> Result<[f64; 3], GeomError> {
            let px = (d1 * d1 + x[5] - d2 * d2) / (2.0 * y6);
            let py = (d1 * d1 - d3 * d3 + cx * cx + cy * cy - 2.0 * px * cx) / (2.0 * cy);
            let pz2 = d1 * d1 - px * px - py * py;
            if pz2 <= 0.0 {
                return Err(GeomError::ImpossibleApex(d1, d2, d3));
            }
            Ok([px, py, pz2.sqrt()])
        };
        let p = apex(y[0], y[1], y[2])?;
        let q = apex(opposite[0], opposite[1], opposite[2])?;
        let dx = p[0] - q[0];
        let dy = p[1] - q[1];
        let dz = p[2] + q[2];
        Ok((dx * dx + dy * dy + dz * dz).sqrt())
    }
}

/// Minimal 3-vector helpers used across the crate.
pub mod vec3 {
    pub type V3 = [f64; 3];

    pub fn sub(a: V3, b: V3) -> V3 {
        [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
    }

    pub fn add(a: V3, b: V3) -> V3 {
        [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
    }

    pub fn scale(a: V3, s: f64) -> V3 {
        [a[0] * s, a[1] * s, a[2] * s]
    }

    pub fn dot(a: V3, b: V3) -> f64 {
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    pub fn cross(a: V3, b: V3) -> V3 {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }

    pub fn norm(a: V3) -> f64 {
        dot(a, a).sqrt()
    }

    pub fn dist(a: V3, b: V3) -> f64 {
        norm(sub(a, b))
    }

    pub fn normalize(a: V3) -> V3 {
        scale(a, 1.0 / norm(a))
    }

    /// Edge-length simplex of the tetrahedron (p0; p1, p2, p3).
    pub fn edge_lengths(p0: V3, p1: V3, p2: V3, p3: V3) -> [f64; 6] {
        [
            dist(p0, p1),
            dist(p0, p2),
            dist(p0, p3),
            dist(p2, p3),
            dist(p1, p3),
            dist(p1, p2),
        ]
    }
}
