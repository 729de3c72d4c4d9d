//! Local cluster decomposition around a packing vertex and its score.
//!
//! The directions around a vertex split into standard regions
//! ([`qsys::standard_regions`]); the solid simplices of the Q-system that
//! contain the vertex lie over those regions, and what remains is the
//! vertex's cell: the points nearer to it than to any other vertex, after
//! protruding cell tips have been reassigned to their face neighbors.
//! Each region yields one cluster whose score combines the scores of its
//! simplices with the compression-style score of the cell part over the
//! region; the vertex total is the sum over clusters.

use crate::constants::{self, TWO_T0};
use crate::exec::{self, Parallelism};
use crate::geom::vec3::{add, cross, dist, dot, norm, normalize, scale, sub, V3};
use crate::geom::GeomError;
use crate::qsys::{
    self, direction_in_region, point_in_tetra, Member, MemberKind, Packing, QSystem, Region,
    RegionError, StandardRegions,
};
use crate::score::{self, QuarterContext, ScoreError, ScorePart, TruncatedClusterData};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StarError {
    #[error("geometry failure in cluster assembly: {0}")]
    Geom(#[from] GeomError),
    #[error("score failure: {0}")]
    Score(#[from] ScoreError),
    #[error("region construction failed: {0}")]
    Region(#[from] RegionError),
    #[error("member {vertices:?} lies over {hits} regions")]
    MemberAssignment { vertices: [usize; 4], hits: usize },
    #[error("no diagonal record for quarter diagonal {0:?}")]
    MissingDiagonal((usize, usize)),
}

/// Effective density bound implied by a uniform star score bound `s`.
pub fn delta_eff(s: f64) -> f64 {
    let pi = std::f64::consts::PI;
    16.0 * pi * constants::delta_oct() / (16.0 * pi - 3.0 * s)
}

/// Whether the constructions around `center` cannot be affected by the
/// edge of a finite patch: the vertex lies at least two long-diagonal
/// lengths inside the cloud's bounding sphere.
pub fn is_interior(p: &Packing, center: usize) -> bool {
    let rmax = p.points().iter().map(|&q| norm(q)).fold(0.0, f64::max);
    norm(p.point(center)) <= rmax - 2.0 * constants::sqrt8()
}

fn dist2(a: V3, b: V3) -> f64 {
    let d = sub(a, b);
    dot(d, d)
}

/// Circumcenter of a tetrahedron, or `None` when it is degenerate.
fn tetra_circumcenter(t: &[V3; 4]) -> Option<V3> {
    let a = sub(t[1], t[0]);
    let b = sub(t[2], t[0]);
    let c = sub(t[3], t[0]);
    let det = dot(a, cross(b, c));
    if det.abs() < 1e-12 {
        return None;
    }
    let num = add(
        add(
            scale(cross(b, c), dot(a, a)),
            scale(cross(c, a), dot(b, b)),
        ),
        scale(cross(a, b), dot(c, c)),
    );
    Some(add(t[0], scale(num, 0.5 / det)))
}

/// A protruding cell tip: the points beyond one face of a Q-system
/// simplex that are nearer to the opposite vertex than to the three face
/// vertices.  Such points are cut away from the opposite vertex's cell
/// and fall to whoever is nearest among the remaining vertices.
#[derive(Debug, Clone)]
pub(crate) struct Tip {
    pub(crate) owner: usize,
    owner_pos: V3,
    others: [V3; 3],
    /// Unit normal of the face plane, pointing away from the owner.
    normal: V3,
    offset: f64,
    /// The tip is a pyramid with apex at the simplex circumcenter; every
    /// tip point lies within `bound_radius` of `bound_center`.
    bound_center: V3,
    bound_radius: f64,
}

impl Tip {
    fn contains(&self, x: V3) -> bool {
        if dot(self.normal, x) <= self.offset {
            return false;
        }
        let d0 = dist2(x, self.owner_pos);
        self.others.iter().all(|&o| d0 < dist2(x, o))
    }
}

/// All protruding tips of the Q-system simplices.
pub(crate) fn collect_tips(p: &Packing, q: &QSystem) -> Vec<Tip> {
    let pts = p.points();
    let mut tips = Vec::new();
    for m in &q.members {
        let t = m.coords(pts);
        let Some(cc) = tetra_circumcenter(&t) else {
            continue;
        };
        for a in 0..4 {
            let owner_pos = t[a];
            let rest: Vec<V3> = (0..4).filter(|&k| k != a).map(|k| t[k]).collect();
            let others = [rest[0], rest[1], rest[2]];
            let n0 = cross(sub(others[1], others[0]), sub(others[2], others[0]));
            let nn = norm(n0);
            if nn < 1e-12 {
                continue;
            }
            let mut normal = scale(n0, 1.0 / nn);
            if dot(normal, sub(owner_pos, others[0])) > 0.0 {
                normal = scale(normal, -1.0);
            }
            let offset = dot(normal, others[0]);
            // a tip exists only when the circumcenter lies strictly
            // beyond the face as seen from the owner
            if dot(normal, cc) - offset <= 1e-12 {
                continue;
            }
            let mut bound_radius: f64 = 0.0;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    // edge ray of the nearest-to-owner cone through cc
                    let d = cross(sub(others[i], owner_pos), sub(others[j], owner_pos));
                    let dn = norm(d);
                    if dn < 1e-12 {
                        bound_radius = f64::INFINITY;
                        continue;
                    }
                    let slope = dot(normal, scale(d, 1.0 / dn));
                    if slope.abs() < 1e-9 {
                        bound_radius = f64::INFINITY;
                        continue;
                    }
                    let along = (offset - dot(normal, cc)) / slope;
                    bound_radius = bound_radius.max(along.abs());
                }
            }
            tips.push(Tip {
                owner: m.vertices[a],
                owner_pos,
                others,
                normal,
                offset,
                bound_center: cc,
                bound_radius,
            });
        }
    }
    tips
}

/// Per-star lookup context for cell membership tests inside the sampled
/// ball around the center.
struct CellProbe<'a> {
    p: &'a Packing,
    center: usize,
    /// Simplex hulls that can reach the ball, with a bounding sphere.
    hulls: Vec<([V3; 4], V3, f64)>,
    tips: Vec<Tip>,
    /// Vertices that can be nearest to a point of the ball.
    cand: Vec<usize>,
}

impl<'a> CellProbe<'a> {
    fn new(p: &'a Packing, q: &QSystem, tips: &[Tip], center: usize, reach: f64) -> CellProbe<'a> {
        let c = p.point(center);
        let pts = p.points();
        let hulls: Vec<([V3; 4], V3, f64)> = q
            .members
            .iter()
            .map(|m| {
                let t = m.coords(pts);
                let ctr = qsys::centroid(&t);
                let r = t.iter().map(|&v| dist(v, ctr)).fold(0.0, f64::max);
                (t, ctr, r)
            })
            .filter(|(_, ctr, r)| dist(*ctr, c) <= reach + r + 1e-9)
            .collect();
        let tips: Vec<Tip> = tips
            .iter()
            .filter(|t| {
                t.bound_radius.is_infinite()
                    || dist(t.bound_center, c) <= reach + t.bound_radius + 1e-9
            })
            .cloned()
            .collect();
        let cand = p.near_point(c, reach + TWO_T0 + 0.6);
        CellProbe {
            p,
            center,
            hulls,
            tips,
            cand,
        }
    }

    /// The vertex owning `x` in the cell partition, or `None` when `x`
    /// lies inside a Q-system simplex.
    fn owner(&self, x: V3) -> Option<usize> {
        for (hull, ctr, r) in &self.hulls {
            if dist2(x, *ctr) <= r * r && point_in_tetra(x, hull, 0.0) {
                return None;
            }
        }
        let deleted: Vec<usize> = self
            .tips
            .iter()
            .filter(|t| t.contains(x))
            .map(|t| t.owner)
            .collect();
        let mut best: Option<(f64, usize)> = None;
        for &v in &self.cand {
            if deleted.contains(&v) {
                continue;
            }
            let d = dist2(x, self.p.point(v));
            if best.map_or(true, |(bd, bv)| (d, v) < (bd, bv)) {
                best = Some((d, v));
            }
        }
        if best.is_none() {
            // the local candidate ball was fully deleted; fall back to a
            // global scan
            for v in 0..self.p.len() {
                if deleted.contains(&v) {
                    continue;
                }
                let d = dist2(x, self.p.point(v));
                if best.map_or(true, |(bd, bv)| (d, v) < (bd, bv)) {
                    best = Some((d, v));
                }
            }
        }
        best.map(|(_, v)| v)
    }

    fn is_cell_point(&self, x: V3) -> bool {
        self.owner(x) == Some(self.center)
    }
}

const SOBOL_BITS: usize = 32;

const fn sobol_tables() -> [[u32; SOBOL_BITS]; 3] {
    let mut t = [[0u32; SOBOL_BITS]; 3];
    let mut k = 0;
    while k < SOBOL_BITS {
        t[0][k] = 1u32 << (31 - k);
        k += 1;
    }
    t[1][0] = 1u32 << 31;
    let mut k = 1;
    while k < SOBOL_BITS {
        t[1][k] = t[1][k - 1] ^ (t[1][k - 1] >> 1);
        k += 1;
    }
    t[2][0] = 1u32 << 31;
    t[2][1] = 3u32 << 30;
    let mut k = 2;
    while k < SOBOL_BITS {
        t[2][k] = t[2][k - 1] ^ t[2][k - 2] ^ (t[2][k - 2] >> 2);
        k += 1;
    }
    t
}

static SOBOL: [[u32; SOBOL_BITS]; 3] = sobol_tables();

/// `i`-th point of a 3-D low-discrepancy sequence, components in [0, 1).
fn sobol3(i: u32) -> [f64; 3] {
    let mut x = [0u32; 3];
    let mut bits = i;
    let mut k = 0;
    while bits != 0 {
        if bits & 1 == 1 {
            x[0] ^= SOBOL[0][k];
            x[1] ^= SOBOL[1][k];
            x[2] ^= SOBOL[2][k];
        }
        bits >>= 1;
        k += 1;
    }
    x.map(|v| v as f64 * 2.0_f64.powi(-32))
}

fn frac(x: f64) -> f64 {
    let f = x.fract();
    if f < 0.0 {
        f + 1.0
    } else {
        f
    }
}

/// Spherical cap guaranteed to contain a region, with a sampling frame.
struct RegionCap {
    axis: V3,
    e1: V3,
    e2: V3,
    cos_theta: f64,
    solid_angle: f64,
}

fn orthonormal_frame(axis: V3) -> (V3, V3) {
    let k = (0..3)
        .min_by(|&a, &b| axis[a].abs().partial_cmp(&axis[b].abs()).unwrap())
        .unwrap();
    let mut e = [0.0; 3];
    e[k] = 1.0;
    let e1 = normalize(cross(e, axis));
    let e2 = cross(axis, e1);
    (e1, e2)
}

fn region_cap(p: &Packing, sr: &StandardRegions, region: &Region) -> RegionCap {
    let full = 4.0 * std::f64::consts::PI;
    if region.boundary.is_empty() {
        let axis = [0.0, 0.0, 1.0];
        let (e1, e2) = orthonormal_frame(axis);
        return RegionCap {
            axis,
            e1,
            e2,
            cos_theta: -1.0,
            solid_angle: full,
        };
    }
    let c = p.point(sr.center);
    let dirs: Vec<V3> = region
        .boundary
        .iter()
        .map(|&v| normalize(sub(p.point(v), c)))
        .collect();
    let mut axis = [0.0; 3];
    for d in &dirs {
        axis = add(axis, *d);
    }
    let axis = if norm(axis) < 1e-9 {
        dirs[0]
    } else {
        normalize(axis)
    };
    // the angular extent of the region from the axis is attained on its
    // boundary: at a corner, or at the far point of an arc's great circle
    // when that point falls on the arc
    let mut cmin = 1.0_f64;
    for i in 0..dirs.len() {
        let u = dirs[i];
        let w = dirs[(i + 1) % dirs.len()];
        cmin = cmin.min(dot(axis, u));
        let n0 = cross(u, w);
        let nn = norm(n0);
        if nn < 1e-12 {
            continue;
        }
        let n = scale(n0, 1.0 / nn);
        let q = sub(scale(n, dot(axis, n)), axis);
        let qn = norm(q);
        if qn < 1e-12 {
            continue;
        }
        let f = scale(q, 1.0 / qn);
        if dot(cross(u, f), n) > 0.0 && dot(cross(f, w), n) > 0.0 {
            cmin = cmin.min(dot(axis, f));
        }
    }
    let theta = (cmin.clamp(-1.0, 1.0).acos() + 1e-7).min(std::f64::consts::PI);
    let ct = theta.cos();
    let (e1, e2) = orthonormal_frame(axis);
    RegionCap {
        axis,
        e1,
        e2,
        cos_theta: ct,
        solid_angle: 2.0 * std::f64::consts::PI * (1.0 - ct),
    }
}

impl RegionCap {
    #[cfg(test)]
    fn contains_dir(&self, d: V3) -> bool {
        dot(self.axis, normalize(d)) >= self.cos_theta
    }

    /// Maps a unit-cube point to a (direction, radius) pair distributed
    /// uniformly over the cone of the cap truncated at `radius`.
    fn sample(&self, u: [f64; 3], radius: f64) -> (V3, f64) {
        let z = 1.0 - u[0] * (1.0 - self.cos_theta);
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let phi = 2.0 * std::f64::consts::PI * u[1];
        let dir = add(
            add(
                scale(self.e1, rho * phi.cos()),
                scale(self.e2, rho * phi.sin()),
            ),
            scale(self.axis, z),
        );
        (dir, radius * u[2].cbrt())
    }

    fn measure(&self, radius: f64) -> f64 {
        self.solid_angle * radius.powi(3) / 3.0
    }
}

/// Quadrature controls for the cell volumes of a star.
#[derive(Debug, Clone)]
pub struct StarOptions {
    pub samples_per_batch: usize,
    /// Number of independently shifted batches; the spread of the batch
    /// estimates yields the reported uncertainty.
    pub batches: usize,
    pub seed: u64,
    /// Sampling radius around the center; the cell of a vertex of a
    /// saturated packing lies within this distance.
    pub radius: f64,
    pub mode: Parallelism,
}

impl Default for StarOptions {
    fn default() -> Self {
        StarOptions {
            samples_per_batch: 1 << 16,
            batches: 8,
            seed: 0,
            radius: 2.2,
            mode: Parallelism::default(),
        }
    }
}

/// Score and geometry report for the cluster over one standard region.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterScore {
    pub region: usize,
    pub sides: usize,
    pub boundary: Vec<usize>,
    pub solid_angle: f64,
    pub members: Vec<Member>,
    /// Solid angle at the center left to the cell part.
    pub cell_solid_angle: f64,
    /// Estimated volume of the cell part over the region (zero when a
    /// quasi-regular tetrahedron covers the region).
    pub cell_volume: f64,
    /// One-sigma spread of the volume estimate across batches.
    pub cell_volume_err: f64,
    pub score: f64,
    /// One-sigma uncertainty of the score induced by the volume estimate.
    pub score_err: f64,
    pub parts: Vec<ScorePart>,
}

/// The total score of the decomposition around one vertex.
#[derive(Debug, Clone, Serialize)]
pub struct StarScore {
    pub center: usize,
    pub interior: bool,
    pub clusters: Vec<ClusterScore>,
    pub total: f64,
    pub total_err: f64,
    pub pt_multiple: f64,
    pub density_bound: f64,
}

/// Scores the decomposition star at `sr.center`.
pub fn score_star(
    p: &Packing,
    q: &QSystem,
    sr: &StandardRegions,
    opts: &StarOptions,
) -> Result<StarScore, StarError> {
    let all_tips = collect_tips(p, q);
    score_star_with_tips(p, q, sr, &all_tips, opts)
}

fn score_star_with_tips(
    p: &Packing,
    q: &QSystem,
    sr: &StandardRegions,
    all_tips: &[Tip],
    opts: &StarOptions,
) -> Result<StarScore, StarError> {
    let center = sr.center;
    let c = p.point(center);
    let pts = p.points();
    let nregions = sr.regions.len();

    // assign every simplex at the center to the region it lies over
    let mut per_region: Vec<Vec<Member>> = vec![Vec::new(); nregions];
    let mut covered = vec![false; nregions];
    for m in q.members_at(center) {
        let rest: Vec<usize> = m
            .vertices
            .iter()
            .copied()
            .filter(|&v| v != center)
            .collect();
        let tri = sr.regions.iter().position(|r| {
            r.is_triangle() && {
                let mut b = r.boundary.clone();
                b.sort_unstable();
                b == rest
            }
        });
        let ri = match (m.kind, tri) {
            (MemberKind::QuasiRegular, Some(i)) => {
                covered[i] = true;
                i
            }
            _ => {
                let dirm = normalize(sub(qsys::centroid(&m.coords(pts)), c));
                let hits: Vec<usize> = (0..nregions)
                    .filter(|&i| direction_in_region(p, sr, &sr.regions[i], dirm))
                    .collect();
                if hits.len() != 1 {
                    return Err(StarError::MemberAssignment {
                        vertices: m.vertices,
                        hits: hits.len(),
                    });
                }
                hits[0]
            }
        };
        per_region[ri].push(m);
    }
    for (i, ms) in per_region.iter().enumerate() {
        if covered[i] && ms.len() != 1 {
            covered[i] = false;
        }
    }

    let caps: Vec<RegionCap> = sr
        .regions
        .iter()
        .map(|r| region_cap(p, sr, r))
        .collect();

    // batch shifts are drawn region-major so results do not depend on
    // which regions end up needing quadrature
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut shifts = vec![[0.0; 3]; nregions * opts.batches];
    for s in shifts.iter_mut() {
        *s = [rng.gen::<f64>(), rng.gen::<f64>(), rng.gen::<f64>()];
    }

    let probe = CellProbe::new(p, q, all_tips, center, opts.radius);
    let tasks: Vec<(usize, usize)> = (0..nregions)
        .filter(|&ri| !covered[ri])
        .flat_map(|ri| (0..opts.batches).map(move |b| (ri, b)))
        .collect();
    let n = opts.samples_per_batch;
    let counts = exec::map_collect(opts.mode, &tasks, |&(ri, b)| {
        let cap = &caps[ri];
        let region = &sr.regions[ri];
        let shift = shifts[ri * opts.batches + b];
        let mut acc: u64 = 0;
        for i in 0..n {
            let u0 = sobol3(i as u32);
            let u = [
                frac(u0[0] + shift[0]),
                frac(u0[1] + shift[1]),
                frac(u0[2] + shift[2]),
            ];
            let (dir, r) = cap.sample(u, opts.radius);
            if !direction_in_region(p, sr, region, dir) {
                continue;
            }
            if probe.is_cell_point(add(c, scale(dir, r))) {
                acc += 1;
            }
        }
        acc
    });
    let mut batch_counts: Vec<Vec<u64>> = vec![Vec::new(); nregions];
    for (t, &(ri, _)) in tasks.iter().enumerate() {
        batch_counts[ri].push(counts[t]);
    }

    let doct = constants::delta_oct();
    let mut clusters = Vec::with_capacity(nregions);
    for (ri, r) in sr.regions.iter().enumerate() {
        let ms = &per_region[ri];
        let mut parts: Vec<ScorePart> = Vec::new();
        let cluster = if covered[ri] {
            let s = ms[0].simplex_at(pts, center)?;
            let val = score::sigma_qrtet(&s)?;
            parts.push(ScorePart {
                label: "quasi-regular tetrahedron".to_string(),
                value: val,
            });
            ClusterScore {
                region: ri,
                sides: r.side_count(),
                boundary: r.boundary.clone(),
                solid_angle: r.solid_angle,
                members: ms.clone(),
                cell_solid_angle: 0.0,
                cell_volume: 0.0,
                cell_volume_err: 0.0,
                score: val,
                score_err: 0.0,
                parts,
            }
        } else {
            let mut sigma = 0.0;
            let mut sol_members = 0.0;
            for m in ms {
                let s = m.simplex_at(pts, center)?;
                sol_members += s.solid_angle()?;
                let val = match m.kind {
                    MemberKind::QuasiRegular => {
                        let v = score::sigma_qrtet(&s)?;
                        parts.push(ScorePart {
                            label: "quasi-regular tetrahedron".to_string(),
                            value: v,
                        });
                        v
                    }
                    MemberKind::Quarter { diagonal } => {
                        let ctx = if diagonal.0 == center || diagonal.1 == center {
                            let (anchors, gaps) = q
                                .context_of(diagonal)
                                .ok_or(StarError::MissingDiagonal(diagonal))?;
                            QuarterContext::Upright { anchors, gaps }
                        } else {
                            QuarterContext::Flat
                        };
                        let v = score::sigma_quarter(&s, ctx)?;
                        let label = match ctx {
                            QuarterContext::Flat => "flat quarter".to_string(),
                            QuarterContext::Upright { anchors, gaps } => {
                                format!("upright quarter ({anchors},{gaps})")
                            }
                        };
                        parts.push(ScorePart { label, value: v });
                        v
                    }
                };
                sigma += val;
            }
            let sol_cell = (r.solid_angle - sol_members).max(0.0);
            debug_assert!(r.solid_angle - sol_members > -1e-9);
            let meas = caps[ri].measure(opts.radius);
            let vols: Vec<f64> = batch_counts[ri]
                .iter()
                .map(|&a| meas * a as f64 / n as f64)
                .collect();
            let nb = vols.len() as f64;
            let vol = vols.iter().sum::<f64>() / nb;
            let err = if vols.len() > 1 {
                let var = vols.iter().map(|v| (v - vol) * (v - vol)).sum::<f64>() / (nb - 1.0);
                (var / nb).sqrt()
            } else {
                0.0
            };
            let vor_cell = 4.0 * (-doct * vol + sol_cell / 3.0);
            parts.push(ScorePart {
                label: "cell part".to_string(),
                value: vor_cell,
            });
            sigma += vor_cell;
            ClusterScore {
                region: ri,
                sides: r.side_count(),
                boundary: r.boundary.clone(),
                solid_angle: r.solid_angle,
                members: ms.clone(),
                cell_solid_angle: sol_cell,
                cell_volume: vol,
                cell_volume_err: err,
                score: sigma,
                score_err: 4.0 * doct * err,
                parts,
            }
        };
        clusters.push(cluster);
    }

    let total: f64 = clusters.iter().map(|cl| cl.score).sum();
    let total_err = clusters
        .iter()
        .map(|cl| cl.score_err * cl.score_err)
        .sum::<f64>()
        .sqrt();
    Ok(StarScore {
        center,
        interior: is_interior(p, center),
        clusters,
        total,
        total_err,
        pt_multiple: total / constants::pt(),
        density_bound: delta_eff(total),
    })
}

/// Scores every interior vertex, in vertex order.  Each star draws its
/// quadrature shifts from a seed mixed with the vertex id, so single-star
/// runs reproduce the corresponding entry.
pub fn score_all_interior(
    p: &Packing,
    q: &QSystem,
    opts: &StarOptions,
) -> Result<Vec<StarScore>, StarError> {
    let all_tips = collect_tips(p, q);
    let mut out = Vec::new();
    for v in 0..p.len() {
        if !is_interior(p, v) {
            continue;
        }
        let sr = qsys::standard_regions(p, v)?;
        let mut o = opts.clone();
        o.seed = mix_seed(opts.seed, v);
        out.push(score_star_with_tips(p, q, &sr, &all_tips, &o)?);
    }
    Ok(out)
}

/// Seed for the star at vertex `v` under a run seed.
pub fn mix_seed(seed: u64, v: usize) -> u64 {
    seed ^ (v as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Truncated score of the cone over `region`, treating it as a plain
/// truncated cell: boundary corners carry their interior angles, enclosed
/// vertices carry a full turn, and consecutive boundary pairs bound the
/// interior faces.  Walls to enclosed vertices are not subtracted, so for
/// regions with enclosed vertices the value is an upper bound.
pub fn truncated_cluster_score(
    p: &Packing,
    sr: &StandardRegions,
    region: &Region,
    t: f64,
) -> f64 {
    let c = p.point(sr.center);
    let nb = region.boundary.len();
    let mut corners: Vec<(f64, f64)> = Vec::new();
    let mut faces: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..nb {
        let v = region.boundary[i];
        let y = dist(p.point(v), c);
        corners.push((y, region.angles[i]));
        let w = region.boundary[(i + 1) % nb];
        faces.push((y, dist(p.point(w), c), dist(p.point(v), p.point(w))));
    }
    for w in p.near_point(c, 2.0 * t) {
        if w == sr.center || region.boundary.contains(&w) || sr.nodes.contains(&w) {
            continue;
        }
        let d = normalize(sub(p.point(w), c));
        if direction_in_region(p, sr, region, d) {
            corners.push((dist(p.point(w), c), 2.0 * std::f64::consts::PI));
        }
    }
    score::vor_cluster_trunc(
        &TruncatedClusterData {
            solid_angle: region.solid_angle,
            corners,
            faces,
        },
        t,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice;
    use crate::oracle;

    #[test]
    fn low_discrepancy_sequence_stratifies_each_axis() {
        assert_eq!(sobol3(0), [0.0, 0.0, 0.0]);
        assert_eq!(sobol3(1), [0.5, 0.5, 0.5]);
        // the first 2^k points place exactly one point in each dyadic bin
        for k in [2u32, 4, 6] {
            let m = 1u32 << k;
            for d in 0..3 {
                let mut seen = vec![0u32; m as usize];
                for i in 0..m {
                    let x = sobol3(i)[d];
                    seen[(x * m as f64) as usize] += 1;
                }
                assert!(seen.iter().all(|&cnt| cnt == 1), "dim {d}, 2^{k}");
            }
        }
    }

    #[test]
    fn face_centered_packing_has_no_protruding_tips() {
        let p = Packing::new(lattice::fcc_patch(2)).unwrap();
        let q = QSystem::build(&p);
        assert!(!q.members.is_empty());
        assert_eq!(collect_tips(&p, &q).len(), 0);
    }

    #[test]
    fn region_caps_cover_their_regions() {
        let p = Packing::new(lattice::fcc_patch(2)).unwrap();
        let sr = qsys::standard_regions(&p, 0).unwrap();
        let c = p.point(0);
        for region in &sr.regions {
            let cap = region_cap(&p, &sr, region);
            for &v in &region.boundary {
                let d = normalize(sub(p.point(v), c));
                assert!(
                    dot(cap.axis, d) >= cap.cos_theta - 1e-12,
                    "boundary node escapes its cap"
                );
            }
            // any direction accepted by the winding test must be in the cap
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..200 {
                let d = normalize([
                    rng.gen::<f64>() - 0.5,
                    rng.gen::<f64>() - 0.5,
                    rng.gen::<f64>() - 0.5,
                ]);
                if direction_in_region(&p, &sr, region, d) {
                    assert!(cap.contains_dir(d), "region direction escapes its cap");
                }
            }
        }
    }

    #[test]
    fn face_centered_star_scores_eight_points() {
        let p = Packing::new(lattice::fcc_patch(3)).unwrap();
        let q = QSystem::build(&p);
        let sr = qsys::standard_regions(&p, 0).unwrap();
        let opts = StarOptions {
            samples_per_batch: 1 << 13,
            batches: 8,
            seed: 11,
            ..StarOptions::default()
        };
        let star = score_star(&p, &q, &sr, &opts).unwrap();
        assert!(star.interior);
        assert_eq!(star.clusters.len(), 14);
        let pt = constants::pt();
        let mut triangles = 0;
        let mut quads = 0;
        for cl in &star.clusters {
            match cl.sides {
                3 => {
                    triangles += 1;
                    assert!((cl.score - pt).abs() < 1e-9, "tetrahedron cluster at pt");
                }
                4 => {
                    quads += 1;
                    assert_eq!(cl.members.len(), 4, "four quarters over a square region");
                    // the four quarters tile the cone: no cell part remains
                    assert!(cl.cell_solid_angle < 1e-9);
                    assert!(
                        cl.score.abs() <= 3.0 * cl.score_err + 1e-6,
                        "square cluster score {} +- {}",
                        cl.score,
                        cl.score_err
                    );
                }
                other => panic!("unexpected region with {other} sides"),
            }
        }
        assert_eq!(triangles, 8);
        assert_eq!(quads, 6);
        assert!(
            (star.total - 8.0 * pt).abs() < 1e-3,
            "total {} vs 8 pt {}",
            star.total,
            8.0 * pt
        );
        assert!((star.pt_multiple - 8.0).abs() < 2e-2);
        // the density bound at 8 pt is the face-centered packing density
        assert!((delta_eff(8.0 * pt) - constants::fcc_density()).abs() < 1e-12);
    }

    #[test]
    fn face_centered_cell_budget_matches_voronoi_volume() {
        // around an interior vertex, simplex Voronoi pieces plus sampled
        // cell parts add up to the volume of the rhombic dodecahedral
        // Voronoi cell, 4 sqrt 2
        let p = Packing::new(lattice::fcc_patch(3)).unwrap();
        let q = QSystem::build(&p);
        let sr = qsys::standard_regions(&p, 0).unwrap();
        let opts = StarOptions {
            samples_per_batch: 1 << 12,
            batches: 4,
            seed: 3,
            ..StarOptions::default()
        };
        let star = score_star(&p, &q, &sr, &opts).unwrap();
        let pts = p.points();
        let mut total: f64 = star.clusters.iter().map(|cl| cl.cell_volume).sum();
        for m in q.members_at(0) {
            let s = m.simplex_at(pts, 0).unwrap();
            total += oracle::voronoi_piece_volume(&s);
        }
        let expect = 4.0 * std::f64::consts::SQRT_2;
        assert!(
            (total - expect).abs() < 1e-6,
            "cell budget {total} vs {expect}"
        );
    }

    #[test]
    fn face_centered_square_cluster_truncated_score_vanishes() {
        let p = Packing::new(lattice::fcc_patch(2)).unwrap();
        let sr = qsys::standard_regions(&p, 0).unwrap();
        let quad = sr
            .regions
            .iter()
            .find(|r| r.side_count() == 4)
            .expect("square region");
        let v = truncated_cluster_score(&p, &sr, quad, constants::sqrt2());
        assert!(v.abs() < 1e-9, "truncated square cluster score {v}");
    }

    #[test]
    fn star_scores_are_deterministic() {
        let p = Packing::new(lattice::fcc_patch(2)).unwrap();
        let q = QSystem::build(&p);
        let sr = qsys::standard_regions(&p, 1).unwrap();
        let opts = StarOptions {
            samples_per_batch: 1 << 10,
            batches: 4,
            seed: 5,
            ..StarOptions::default()
        };
        let a = score_star(&p, &q, &sr, &opts).unwrap();
        let b = score_star(&p, &q, &sr, &opts).unwrap();
        assert_eq!(a.total.to_bits(), b.total.to_bits());
        let seq = StarOptions {
            mode: Parallelism::Sequential,
            ..opts.clone()
        };
        let s = score_star(&p, &q, &sr, &seq).unwrap();
        assert_eq!(a.total.to_bits(), s.total.to_bits());
        for (x, y) in a.clusters.iter().zip(s.clusters.iter()) {
            assert_eq!(x.cell_volume.to_bits(), y.cell_volume.to_bits());
        }
    }
}
