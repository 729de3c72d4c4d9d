//! Scoring functions.
//!
//! The score of a simplex or truncated cell blends two measures of local
//! packing efficiency: the analytic Voronoi score `vor` (negative density
//! excess of the cell piece inside the simplex) and the compression
//! `gamma` (the same quantity averaged over the four vertex placements).
//! Truncated variants cut the cell at radius `t` and account for the
//! spherical boundary through `phi` terms and `quoin` wedge corrections.

use crate::constants::{self, T0, TWO_T0};
use crate::geom::{eta, u_x, EdgeSimplex, Face, GeomError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScoreError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("simplex has no unique diagonal edge")]
    NotAQuarter,
}

/// Score density of a spherical shell piece: `phi(h, t)` weights the part
/// of a cone between radius `h` and `t`.
pub fn phi(h: f64, t: f64) -> f64 {
    2.0 * (2.0 - constants::delta_oct() * h * t * (h + t)) / 3.0
}

/// Wedge volume above the Rogers simplex `R(a, b, c)`, cut by the sphere
/// of radius `c`.  Zero unless `0 < a < b < c`.
pub fn quoin(a: f64, b: f64, c: f64) -> f64 {
    if !(0.0 < a && a < b && b < c) {
        return 0.0;
    }
    let e = ((c * c - b * b) / (b * b - a * a)).sqrt();
    let t1 = (a + 2.0 * c) * (c - a) * (c - a) * e.atan();
    let t2 = a * (b * b - a * a) * e;
    let t3 = 4.0 * c * c * c * (e * (b - a) / (b + c)).atan();
    (t1 + t2 - t3) / 6.0
}

/// Volume of the Rogers simplex `R(a, b, c)`.
pub fn rogers_volume(a: f64, b: f64, c: f64) -> f64 {
    let q = (b * b - a * a).max(0.0).sqrt();
    let r = (c * c - b * b).max(0.0).sqrt();
    a * q * r / 6.0
}

/// Solid angle of `R(a, b, c)` at its origin corner.
pub fn rogers_solid_angle(a: f64, b: f64, c: f64) -> f64 {
    let q = (b * b - a * a).max(0.0).sqrt();
    let r = (c * c - b * b).max(0.0).sqrt();
    2.0 * (q * r / ((a + b) * (b + c))).atan()
}

/// Dihedral angle of `R(a, b, c)` along its edge through the origin.
pub fn rogers_dihedral(a: f64, b: f64, c: f64) -> f64 {
    let q = (b * b - a * a).max(0.0).sqrt();
    let r = (c * c - b * b).max(0.0).sqrt();
    if q == 0.0 {
        std::f64::consts::FRAC_PI_2
    } else {
        (r / q).atan()
    }
}

/// Voronoi score of the Rogers simplex.
pub fn rogers_score(a: f64, b: f64, c: f64) -> f64 {
    4.0 * (-constants::delta_oct() * rogers_volume(a, b, c) + rogers_solid_angle(a, b, c) / 3.0)
}

/// Analytic Voronoi score of a simplex: the score of the intersection of
/// the Voronoi cell at the distinguished vertex with the simplex, extended
/// analytically across negatively oriented faces.
///
/// The cell volume is assembled per origin face as `d * (a1 w1 + a2 w2)/6`
/// where `d` is the signed circumcenter height over the face and `w` the
/// signed in-face distance from each origin edge's midpoint to the face
/// circumcenter; both signs come out of closed forms, so the expression is
/// smooth in the edge lengths.
pub fn vor_analytic(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    let mut vol = 0.0;
    for f in [Face::E126, Face::E135, Face::E234] {
        let p = s.relabel(f.canonical_perm());
        let x = p.squares();
        let d = p.circumcenter_height()?;
        let u = u_x(x[0], x[1], x[5]);
        let fsum = (x[0] * (x[1] + x[5] - x[0]) + x[1] * (x[0] + x[5] - x[1])) / (4.0 * u.sqrt());
        vol += d * fsum / 6.0;
    }
    Ok(4.0 * (-constants::delta_oct() * vol + s.solid_angle()? / 3.0))
}

/// Compression: the average of `vor_analytic` over the four placements of
/// the distinguished vertex.
pub fn gamma(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    let mut total = 0.0;
    for p in s.placements() {
        total += vor_analytic(&p)?;
    }
    Ok(total / 4.0)
}

/// Data describing a truncated cluster for the generalized truncated score:
/// total solid angle, one `(height, dihedral)` entry per corner within the
/// truncation ball, and the edge triple of every interior face at the
/// center (corner heights plus the corner-to-corner distance).
#[derive(Debug, Clone)]
pub struct TruncatedClusterData {
    pub solid_angle: f64,
    pub corners: Vec<(f64, f64)>,
    pub faces: Vec<(f64, f64, f64)>,
}

/// Truncated Voronoi score of a cluster from its boundary data.
pub fn vor_cluster_trunc(data: &TruncatedClusterData, t: f64) -> f64 {
    let phit = phi(t, t);
    let mut out = data.solid_angle * phit;
    for &(y, d) in &data.corners {
        let h = y / 2.0;
        if h <= t {
            out += d * (1.0 - h / t) * (phi(h, t) - phit);
        }
    }
    let doct = constants::delta_oct();
    for &(yi, yj, e) in &data.faces {
        if let Ok(b) = eta(yi, yj, e) {
            out -= 4.0 * doct * (quoin(yi / 2.0, b, t) + quoin(yj / 2.0, b, t));
        }
    }
    out
}

/// Truncated Voronoi score of a single simplex at truncation radius `t`.
pub fn vor_trunc(s: &EdgeSimplex, t: f64) -> Result<f64, ScoreError> {
    let y = s.lengths();
    let data = TruncatedClusterData {
        solid_angle: s.solid_angle()?,
        corners: vec![
            (y[0], s.dihedral_edge(1)?),
            (y[1], s.dihedral_edge(2)?),
            (y[2], s.dihedral_edge(3)?),
        ],
        faces: vec![(y[0], y[1], y[5]), (y[0], y[2], y[4]), (y[1], y[2], y[3])],
    };
    Ok(vor_cluster_trunc(&data, t))
}

/// Truncated score at the standard radius `t0`.
pub fn vor0(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    vor_trunc(s, T0)
}

/// Circumradius of the cone cross-section at an enclosed vertex of height
/// `2h`: `eta(2h, 2, 2.51)`.
pub fn eta0(h: f64) -> f64 {
    eta(2.0 * h, 2.0, TWO_T0).expect("eta0 argument out of range")
}

/// Score of the truncation-excess crown beyond radius `t0` under an
/// enclosed vertex at height `2h`.
pub fn crown(h: f64) -> f64 {
    let e0 = eta0(h);
    2.0 * std::f64::consts::PI * (1.0 - h / e0) * (phi(h, e0) - constants::phi0())
}

/// Score of the full right-circular cone under an enclosed vertex at
/// height `2h`.
pub fn cone_score(h: f64) -> f64 {
    let e0 = eta0(h);
    2.0 * std::f64::consts::PI * (1.0 - h / e0) * phi(h, e0)
}

/// Per-anchor correction to the crown bound: the score adjustment from one
/// anchor (edge `y2`, opposite edge `y6`) of an enclosed vertex with
/// height edge `y1`.  Rogers terms vanish when the corresponding simplex
/// does not exist.
pub fn anc(y1: f64, y2: f64, y6: f64) -> Result<f64, ScoreError> {
    let et = eta(y1, y2, y6)?;
    let e0 = eta0(y1 / 2.0);
    let phi0 = constants::phi0();
    let tau = 2.0 * std::f64::consts::PI;
    let mut out = 0.0;
    let a1 = y1 / 2.0;
    if a1 < et && et < e0 {
        out += -rogers_dihedral(a1, et, e0) * crown(a1) / tau - rogers_solid_angle(a1, et, e0) * phi0
            + rogers_score(a1, et, e0);
    }
    let a2 = y2 / 2.0;
    if a2 < et && et < e0 {
        out += -rogers_dihedral(a2, et, e0) * (1.0 - y2 / TWO_T0) * (phi(a2, T0) - phi0)
            - rogers_solid_angle(a2, et, e0) * phi0
            + rogers_score(a2, et, e0);
    }
    Ok(out)
}

/// One wing of the corner correction `k_score`: Rogers pieces along the
/// face `(y1, y2, y6)` out to radius `sqrt2`, with the conic term along
/// `y1` subtracted.  Terms with nonexistent Rogers simplices vanish.
pub fn k0(y1: f64, y2: f64, y6: f64) -> Result<f64, ScoreError> {
    let s2 = constants::sqrt2();
    let sqrt8 = constants::sqrt8();
    let et = eta(y1, y2, y6)?;
    let mut out = 0.0;
    let a1 = y1 / 2.0;
    if a1 < et && et < s2 {
        out += rogers_score(a1, et, s2)
            - rogers_dihedral(a1, et, s2) * (1.0 - y1 / sqrt8) * phi(a1, s2);
    }
    let a2 = y2 / 2.0;
    if a2 < et && et < s2 {
        out += rogers_score(a2, et, s2);
    }
    Ok(out)
}

/// Corner correction for simplices of circumradius at least `sqrt2`: the
/// score of the four Rogers pieces along the two origin faces through edge
/// 1 plus the cone wedge between them.
pub fn k_score(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    let y = s.lengths();
    let s2 = constants::sqrt2();
    Ok(k0(y[0], y[1], y[5])? + k0(y[0], y[2], y[4])?
        + s.dihedral()? * (1.0 - y[0] / constants::sqrt8()) * phi(y[0] / 2.0, s2))
}

/// Which scoring branch `mu` takes on a quarter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScoreBranch {
    /// `eta` of both diagonal faces at most `sqrt2`: compression type.
    Compression,
    /// Voronoi type.
    Voronoi,
}

/// Admission slack on the squared diagonal length, matching the Q-system
/// builder: a diagonal of length exactly sqrt(8) must stay scorable when a
/// rigid motion of the coordinates perturbs the computed length by an ulp.
const DIAGONAL_MAX_SQ: f64 = 8.0 + 1e-9;

/// 1-based index of the diagonal of a quarter: the unique edge longer than
/// 2.51.  Unlike `SimplexClass`, which compares against the thresholds
/// exactly, this admits ulp-level noise at the closed bounds so quarters
/// built from boundary-length edges do not become unscorable.
fn quarter_diagonal(s: &EdgeSimplex) -> Result<usize, ScoreError> {
    let y = s.lengths();
    let mut diag = None;
    for (i, &v) in y.iter().enumerate() {
        if v > TWO_T0 {
            if diag.is_some() || v * v > DIAGONAL_MAX_SQ {
                return Err(ScoreError::NotAQuarter);
            }
            diag = Some(i + 1);
        } else if v < 2.0 - 1e-9 {
            return Err(ScoreError::NotAQuarter);
        }
    }
    diag.ok_or(ScoreError::NotAQuarter)
}

/// Largest circumradius among the two faces containing the diagonal.
pub fn eta_plus(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    let diag = quarter_diagonal(s)?;
    let [f1, f2] = Face::faces_of_edge(diag);
    Ok(s.face_eta(f1)?.max(s.face_eta(f2)?))
}

/// Score of a quarter: compression if `eta_plus <= sqrt2`, else the
/// analytic Voronoi score.
pub fn mu(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    Ok(mu_with_branch(s)?.0)
}

pub fn mu_with_branch(s: &EdgeSimplex) -> Result<(f64, ScoreBranch), ScoreError> {
    if eta_plus(s)? <= constants::sqrt2() {
        Ok((gamma(s)?, ScoreBranch::Compression))
    } else {
        Ok((vor_analytic(s)?, ScoreBranch::Voronoi))
    }
}

/// Score of a quasi-regular tetrahedron: compression when the circumradius
/// is below 1.41, Voronoi score otherwise.
pub fn sigma_qrtet(s: &EdgeSimplex) -> Result<f64, ScoreError> {
    Ok(sigma_qrtet_with_branch(s)?.0)
}

pub fn sigma_qrtet_with_branch(s: &EdgeSimplex) -> Result<(f64, ScoreBranch), ScoreError> {
    if s.circumradius()? < 1.41 {
        Ok((gamma(s)?, ScoreBranch::Compression))
    } else {
        Ok((vor_analytic(s)?, ScoreBranch::Voronoi))
    }
}

/// Scoring context of a quarter: flat, or upright with the anchor/gap
/// counts `(p, q)` of its diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuarterContext {
    Flat,
    Upright { anchors: u8, gaps: u8 },
}

/// Context-dependent score of a quarter.
///
/// Upright quarters expect the diagonal on edge 1 (callers relabel first);
/// flat quarters may carry their diagonal on any off-origin edge.
pub fn sigma_quarter(s: &EdgeSimplex, ctx: QuarterContext) -> Result<f64, ScoreError> {
    match ctx {
        QuarterContext::Flat => mu(s),
        QuarterContext::Upright { anchors, gaps } => match (anchors, gaps) {
            (4, 0) => Ok((mu(s)? + mu(&s.hat())?) / 2.0),
            (2, 1) => mu(s),
            _ => Ok((mu(s)? + mu(&s.hat())? + vor0(s)? - vor0(&s.hat())?) / 2.0),
        },
    }
}

/// A labelled component of a reported score.
#[derive(Debug, Clone, Serialize)]
pub struct ScorePart {
    pub label: String,
    pub value: f64,
}

/// A score together with the named terms that sum to it.
#[derive(Debug, Clone, Serialize)]
pub struct ScoreBreakdown {
    pub total: f64,
    pub parts: Vec<ScorePart>,
}

impl ScoreBreakdown {
    pub fn new() -> Self {
        ScoreBreakdown {
            total: 0.0,
            parts: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, value: f64) {
        self.total += value;
        self.parts.push(ScorePart {
            label: label.into(),
            value,
        });
    }
}

impl Default for ScoreBreakdown {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::pt;

    fn s(y: [f64; 6]) -> EdgeSimplex {
        EdgeSimplex::new(y).unwrap()
    }

    fn sqrt8() -> f64 {
        8.0_f64.sqrt()
    }

    #[test]
    fn vor_of_regular_tetrahedron_is_pt() {
        let v = vor_analytic(&s([2.0; 6])).unwrap();
        assert!((v - pt()).abs() < 1e-12);
    }

    #[test]
    fn vor_of_octahedral_quarter_is_zero() {
        let v = vor_analytic(&s([sqrt8(), 2.0, 2.0, 2.0, 2.0, 2.0])).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn vor_frozen_sample() {
        let v = vor_analytic(&s([2.1, 2.05, 2.2, 2.15, 2.3, 2.1])).unwrap();
        assert!((v - (-0.087_302_998_929_389_53)).abs() < 1e-12);
    }

    #[test]
    fn gamma_anchors() {
        assert!((gamma(&s([2.0; 6])).unwrap() - pt()).abs() < 1e-12);
        assert!(gamma(&s([sqrt8(), 2.0, 2.0, 2.0, 2.0, 2.0])).unwrap().abs() < 1e-12);
        let g = gamma(&s([2.6, 2.0, 2.1, 2.2, 2.3, 2.05])).unwrap();
        assert!((g - (-0.135_695_597_731_721_82)).abs() < 1e-12);
    }

    #[test]
    fn gamma_is_relabelling_invariant() {
        let q = s([2.6, 2.0, 2.1, 2.2, 2.3, 2.05]);
        let g = gamma(&q).unwrap();
        for p in q.placements() {
            assert!((gamma(&p).unwrap() - g).abs() < 1e-12);
        }
    }

    #[test]
    fn quoin_frozen_values() {
        let q = quoin(1.0, 2.0 / 3.0_f64.sqrt(), 2.0_f64.sqrt());
        assert!((q - 0.022_950_728_054_475_25).abs() < 1e-13);
        let q2 = quoin(1.1, 1.3, 1.41);
        assert!((q2 - 0.002_686_496_853_400_740_3).abs() < 1e-14);
        // zero conventions
        assert_eq!(quoin(1.3, 1.3, 1.41), 0.0);
        assert_eq!(quoin(1.3, 1.2, 1.41), 0.0);
        assert_eq!(quoin(1.1, 1.5, 1.41), 0.0);
    }

    #[test]
    fn rogers_closed_forms() {
        assert!((rogers_score(1.0, 1.15, 1.3) - 0.008_581_877_265_008_586).abs() < 1e-14);
        assert!((rogers_solid_angle(1.0, 1.15, 1.3) - 0.130_527_423_251_786_6).abs() < 1e-14);
        assert!((rogers_dihedral(1.0, 1.15, 1.3) - 0.818_030_019_210_395_3).abs() < 1e-14);
        // the Rogers simplex as an edge simplex agrees on angles
        let (a, b, c) = (1.0_f64, 1.15_f64, 1.3_f64);
        let q = (b * b - a * a).sqrt();
        let r = (c * c - b * b).sqrt();
        let es = s([a, b, c, r, (c * c - a * a).sqrt(), q]);
        assert!((es.solid_angle().unwrap() - rogers_solid_angle(a, b, c)).abs() < 1e-12);
        assert!((es.dihedral().unwrap() - rogers_dihedral(a, b, c)).abs() < 1e-12);
        assert!((es.volume().unwrap() - rogers_volume(a, b, c)).abs() < 1e-12);
    }

    #[test]
    fn phi_at_zero_height() {
        assert!((phi(0.0, 1.7) - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn vor_trunc_reduces_to_vor_analytic_past_circumradius() {
        let y = s([2.0, 2.02, 2.04, 2.06, 2.08, 2.1]);
        let rad = y.circumradius().unwrap();
        assert!((rad - 1.256_109_383_378_329).abs() < 1e-12);
        let vt = vor_trunc(&y, rad + 1e-9).unwrap();
        let va = vor_analytic(&y).unwrap();
        assert!((va - 0.023_616_045_715_493_03).abs() < 1e-12);
        assert!((vt - va).abs() < 1e-8);
    }

    #[test]
    fn crown_and_cone_frozen_values() {
        assert!((crown(1.255) - (-0.137_844_696_270_253_11)).abs() < 1e-12);
        assert!((cone_score(2.0_f64.sqrt()) - (-0.250_289_741_377_207_55)).abs() < 1e-12);
        assert!((cone_score(1.255) - (-0.432_604_017_622_395_03)).abs() < 1e-12);
    }

    #[test]
    fn anc_frozen_values() {
        assert!((anc(sqrt8(), 2.0, 2.0).unwrap() - (-0.012_623_447_308_262_73)).abs() < 1e-12);
        assert!((anc(2.7, 2.2, 2.2).unwrap() - (-0.003_742_125_567_134_335)).abs() < 1e-12);
    }

    #[test]
    fn k_score_frozen_values() {
        let k1 = k_score(&s([2.2, 2.6, 2.6, 2.2, 2.2, 2.2])).unwrap();
        assert!((k1 - (-0.194_015_467_137_568_18)).abs() < 1e-12);
        let k2 = k_score(&s([2.2, 2.2, 2.6, 2.7, 2.1, 2.2])).unwrap();
        assert!((k2 - (-0.196_882_563_870_745_15)).abs() < 1e-12);
        // both samples sit below the thresholds they are used with
        assert!(k1 < -1.04 * pt());
        assert!(k2 < -0.52 * pt());
    }

    #[test]
    fn mu_branches() {
        // eta_plus below sqrt2: compression branch
        let q1 = s([2.6, 2.0, 2.1, 2.2, 2.3, 2.05]);
        let (v, b) = mu_with_branch(&q1).unwrap();
        assert_eq!(b, ScoreBranch::Compression);
        assert!((v - (-0.135_695_597_731_721_82)).abs() < 1e-12);
        // eta_plus above sqrt2: voronoi branch
        let q2 = s([2.8, 2.5, 2.5, 2.0, 2.0, 2.0]);
        let (v2, b2) = mu_with_branch(&q2).unwrap();
        assert_eq!(b2, ScoreBranch::Voronoi);
        assert!((v2 - (-0.290_581_447_756_929_35)).abs() < 1e-12);
        assert!(matches!(
            mu(&s([2.0; 6])),
            Err(ScoreError::NotAQuarter)
        ));
    }

    #[test]
    fn sigma_qrtet_branches() {
        let (v, b) = sigma_qrtet_with_branch(&s([2.0; 6])).unwrap();
        assert_eq!(b, ScoreBranch::Compression);
        assert!((v - pt()).abs() < 1e-12);
        let big = s([2.2, 2.25, 2.5, 2.51, 2.42, 2.3]);
        assert!(big.circumradius().unwrap() > 1.41);
        let (v2, b2) = sigma_qrtet_with_branch(&big).unwrap();
        assert_eq!(b2, ScoreBranch::Voronoi);
        assert!((v2 - (-0.359_624_991_339_266_95)).abs() < 1e-12);
    }

    #[test]
    fn sigma_context_rules() {
        let q = s([2.6, 2.0, 2.1, 2.2, 2.3, 2.05]);
        let m = mu(&q).unwrap();
        let mh = mu(&q.hat()).unwrap();
        let v0 = vor0(&q).unwrap();
        let v0h = vor0(&q.hat()).unwrap();
        assert!((v0 - (-0.076_765_802_438_567_18)).abs() < 1e-12);
        assert!((v0h - (-0.115_416_240_578_321_26)).abs() < 1e-12);
        let s40 = sigma_quarter(&q, QuarterContext::Upright { anchors: 4, gaps: 0 }).unwrap();
        assert!((s40 - (m + mh) / 2.0).abs() < 1e-15);
        let s21 = sigma_quarter(&q, QuarterContext::Upright { anchors: 2, gaps: 1 }).unwrap();
        assert!((s21 - m).abs() < 1e-15);
        let s31 = sigma_quarter(&q, QuarterContext::Upright { anchors: 3, gaps: 1 }).unwrap();
        assert!((s31 - (m + mh + v0 - v0h) / 2.0).abs() < 1e-15);
        // summing sigma over both ends cancels the truncation terms
        let sh31 = sigma_quarter(&q.hat(), QuarterContext::Upright { anchors: 3, gaps: 1 }).unwrap();
        assert!((s31 + sh31 - (m + mh)).abs() < 1e-12);
    }

    #[test]
    fn breakdown_sums_parts() {
        let mut b = ScoreBreakdown::new();
        b.push("a", 1.5);
        b.push("b", -0.25);
        assert!((b.total - 1.25).abs() < 1e-15);
        assert_eq!(b.parts.len(), 2);
    }
}
