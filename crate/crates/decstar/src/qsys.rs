//! Packings, the simplex inventory, and the selection rules that produce
//! the consistent global system of tetrahedra, together with the
//! partition of directions around a vertex into standard regions.
//!
//! A packing is a finite set of points with pairwise distances at least 2.
//! The system of tetrahedra contains every quasi-regular tetrahedron
//! (all six edges in [2, 2.51]) and, per diagonal, either all or none of
//! the quarters along it (five edges in [2, 2.51], one diagonal in
//! (2.51, sqrt(8)]).  Conflicts between overlapping quarter groups are
//! resolved by deterministic rules; configurations outside the known case
//! analysis are excluded conservatively and logged.

use crate::constants::TWO_T0;
use crate::geom::vec3::{self, cross, dist, dot, norm, normalize, scale, sub, V3};
use crate::geom::{EdgeSimplex, GeomError};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

/// Squared upper bound for a diagonal, with tolerance for lattice points
/// whose coordinates are floating-point images of exact values.
const DIAGONAL_MAX_SQ: f64 = 8.0 + 1e-9;
/// Two tetrahedra must interpenetrate by more than this to count as
/// overlapping; face-sharing neighbors stay disjoint.
const OVERLAP_MARGIN: f64 = 1e-9;
const AXIS_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum PackingError {
    #[error("a packing needs at least one vertex")]
    Empty,
    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("vertices {i} and {j} are {d} apart, closer than the unit spacing 2")]
    TooClose { i: usize, j: usize, d: f64 },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Spatial hash over cubical cells for neighbor queries.
#[derive(Debug, Clone)]
struct CellIndex {
    size: f64,
    map: BTreeMap<[i64; 3], Vec<usize>>,
}

impl CellIndex {
    fn build(points: &[V3], size: f64) -> Self {
        let mut map: BTreeMap<[i64; 3], Vec<usize>> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            map.entry(Self::key(*p, size)).or_default().push(i);
        }
        CellIndex { size, map }
    }

    fn key(p: V3, size: f64) -> [i64; 3] {
        [
            (p[0] / size).floor() as i64,
            (p[1] / size).floor() as i64,
            (p[2] / size).floor() as i64,
        ]
    }

    /// Ids of all points within `r` of `p` (closed ball), sorted.
    fn near(&self, points: &[V3], p: V3, r: f64) -> Vec<usize> {
        let reach = (r / self.size).ceil() as i64;
        let c = Self::key(p, self.size);
        let mut out = Vec::new();
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                for dz in -reach..=reach {
                    if let Some(ids) = self.map.get(&[c[0] + dx, c[1] + dy, c[2] + dz]) {
                        for &i in ids {
                            if dist(points[i], p) <= r {
                                out.push(i);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A finite point set with pairwise distances at least 2.
#[derive(Debug, Clone)]
pub struct Packing {
    points: Vec<V3>,
    cells: CellIndex,
}

impl Packing {
    pub fn new(points: Vec<V3>) -> Result<Self, PackingError> {
        if points.is_empty() {
            return Err(PackingError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if !p.iter().all(|c| c.is_finite()) {
                return Err(PackingError::NonFinite { index: i });
            }
        }
        let cells = CellIndex::build(&points, 2.0);
        let packing = Packing { points, cells };
        for i in 0..packing.points.len() {
            for j in packing.neighbors_within(i, 2.0 - 1e-9) {
                if j > i {
                    return Err(PackingError::TooClose {
                        i,
                        j,
                        d: dist(packing.points[i], packing.points[j]),
                    });
                }
            }
        }
        Ok(packing)
    }

    pub fn points(&self) -> &[V3] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> V3 {
        self.points[i]
    }

    /// Ids within `r` of vertex `i` (closed), excluding `i`, sorted.
    pub fn neighbors_within(&self, i: usize, r: f64) -> Vec<usize> {
        let mut v = self.cells.near(&self.points, self.points[i], r);
        v.retain(|&j| j != i);
        v
    }

    /// Ids within `r` of an arbitrary point (closed), sorted.
    pub fn near_point(&self, p: V3, r: f64) -> Vec<usize> {
        self.cells.near(&self.points, p, r)
    }

    /// All id pairs (i < j) at distance at most `r`.
    pub fn pairs_within(&self, r: f64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.points.len() {
            for j in self.neighbors_within(i, r) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edge simplex of four vertex ids with `ids[0]` as the distinguished
    /// vertex.
    pub fn simplex(&self, ids: [usize; 4]) -> Result<EdgeSimplex, GeomError> {
        let [a, b, c, d] = ids.map(|i| self.points[i]);
        EdgeSimplex::new(vec3::edge_lengths(a, b, c, d))
    }

    /// Parses the plain text format: one `x y z` per line, `#` starts a
    /// comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, PackingError> {
        let mut pts = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(PackingError::Parse {
                    line: lineno + 1,
                    msg: format!("expected 3 coordinates, found {}", fields.len()),
                });
            }
            let mut p = [0.0; 3];
            for (k, f) in fields.iter().enumerate() {
                p[k] = f.parse::<f64>().map_err(|e| PackingError::Parse {
                    line: lineno + 1,
                    msg: format!("bad number {f:?}: {e}"),
                })?;
            }
            pts.push(p);
        }
        Packing::new(pts)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self, PackingError> {
        Packing::parse(&std::fs::read_to_string(path)?)
    }

    /// Writes the plain text format with 17 significant digits, enough to
    /// round-trip every f64 exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# packing: {} vertices, unit spacing 2", self.points.len());
        for p in &self.points {
            let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", p[0], p[1], p[2]);
        }
        s
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<(), PackingError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

/// One selected tetrahedron of the global system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Member {
    /// Vertex ids, sorted ascending.
    pub vertices: [usize; 4],
    pub kind: MemberKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MemberKind {
    QuasiRegular,
    Quarter { diagonal: (usize, usize) },
}

impl Member {
    pub fn coords(&self, points: &[V3]) -> [V3; 4] {
        self.vertices.map(|i| points[i])
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// Edge simplex with `origin` (one of the member's vertices) as the
    /// distinguished vertex.  For a quarter, the remaining vertices are
    /// arranged so that the diagonal is the first edge when `origin` lies
    /// on it, and the fourth edge otherwise.
    pub fn simplex_at(&self, points: &[V3], origin: usize) -> Result<EdgeSimplex, GeomError> {
        assert!(self.contains_vertex(origin), "origin must be a member vertex");
        let rest: Vec<usize> = self
            .vertices
            .iter()
            .copied()
            .filter(|&v| v != origin)
            .collect();
        let order: [usize; 4] = match self.kind {
            MemberKind::QuasiRegular => [origin, rest[0], rest[1], rest[2]],
            MemberKind::Quarter { diagonal: (a, b) } => {
                if origin == a || origin == b {
                    let far = if origin == a { b } else { a };
                    let anchors: Vec<usize> =
                        rest.iter().copied().filter(|&v| v != far).collect();
                    [origin, far, anchors[0], anchors[1]]
                } else {
                    let anchor = rest
                        .iter()
                        .copied()
                        .find(|&v| v != a && v != b)
                        .expect("flat quarter has a second anchor");
                    [origin, anchor, a, b]
                }
            }
        };
        let [p0, p1, p2, p3] = order.map(|i| points[i]);
        EdgeSimplex::new(vec3::edge_lengths(p0, p1, p2, p3))
    }
}

/// A diagonal (edge of length in (2.51, sqrt 8]) with its anchors and the
/// quarters along it.
#[derive(Debug, Clone, Serialize)]
pub struct Diagonal {
    pub endpoints: (usize, usize),
    pub length: f64,
    /// Vertices within 2.51 of both endpoints, sorted.
    pub anchors: Vec<usize>,
    /// Vertex id sets of the quarters along this diagonal, sorted.
    pub quarters: Vec<[usize; 4]>,
    /// Whether the quarters along this diagonal are in the system.
    pub selected: bool,
    /// Reason the group was not selected, when it was not.
    pub exclusion: Option<String>,
}

impl Diagonal {
    /// Context (p, q): p anchors, q gaps, p - q quarters along the
    /// diagonal.  Meaningful for selected diagonals.
    pub fn context(&self) -> (u8, u8) {
        let p = self.anchors.len() as u8;
        (p, p.saturating_sub(self.quarters.len() as u8))
    }
}

/// The selected system of tetrahedra for a packing.
#[derive(Debug, Clone, Serialize)]
pub struct QSystem {
    pub members: Vec<Member>,
    pub diagonals: Vec<Diagonal>,
    /// One line per non-obvious selection decision.
    pub log: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Undecided,
    Selected,
    Excluded,
}

impl QSystem {
    pub fn build(p: &Packing) -> QSystem {
        let n = p.len();
        let mut log: Vec<String> = Vec::new();

        // short-edge adjacency (closed at 2.51)
        let adj: Vec<Vec<usize>> = (0..n).map(|i| p.neighbors_within(i, TWO_T0)).collect();
        let is_short = |a: usize, b: usize| adj[a].binary_search(&b).is_ok();

        // quasi-regular tetrahedra: 4-cliques of the short-edge graph
        let mut qrtets: Vec<Member> = Vec::new();
        for i in 0..n {
            for &j in adj[i].iter().filter(|&&j| j > i) {
                let ij: Vec<usize> = adj[i]
                    .iter()
                    .copied()
                    .filter(|&k| k > j && is_short(j, k))
                    .collect();
                for (a, &k) in ij.iter().enumerate() {
                    for &l in ij[a + 1..].iter() {
                        if is_short(k, l) {
                            qrtets.push(Member {
                                vertices: [i, j, k, l],
                                kind: MemberKind::QuasiRegular,
                            });
                        }
                    }
                }
            }
        }

        // diagonals and the quarters along them
        let mut diagonals: Vec<Diagonal> = Vec::new();
        for i in 0..n {
            for j in p.neighbors_within(i, DIAGONAL_MAX_SQ.sqrt()) {
                if j < i {
                    continue;
                }
                let d = dist(p.point(i), p.point(j));
                if d <= TWO_T0 || d * d > DIAGONAL_MAX_SQ {
                    continue;
                }
                let anchors: Vec<usize> = adj[i]
                    .iter()
                    .copied()
                    .filter(|&v| v != j && is_short(j, v))
                    .collect();
                let mut quarters = Vec::new();
                for (a, &u) in anchors.iter().enumerate() {
                    for &w in anchors[a + 1..].iter() {
                        if is_short(u, w) {
                            let mut vs = [i, j, u, w];
                            vs.sort_unstable();
                            quarters.push(vs);
                        }
                    }
                }
                diagonals.push(Diagonal {
                    endpoints: (i, j),
                    length: d,
                    anchors,
                    quarters,
                    selected: false,
                    exclusion: None,
                });
            }
        }

        let quarter_member = |d: &Diagonal, vs: [usize; 4]| Member {
            vertices: vs,
            kind: MemberKind::Quarter {
                diagonal: d.endpoints,
            },
        };

        // groups = diagonals that carry at least one quarter
        let groups: Vec<usize> = (0..diagonals.len())
            .filter(|&g| !diagonals[g].quarters.is_empty())
            .collect();
        let mut status: BTreeMap<usize, Status> =
            groups.iter().map(|&g| (g, Status::Undecided)).collect();
        let mut reason: BTreeMap<usize, String> = BTreeMap::new();

        let pts = p.points();
        let qrtet_coords: Vec<[V3; 4]> = qrtets.iter().map(|m| m.coords(pts)).collect();
        let group_coords: BTreeMap<usize, Vec<[V3; 4]>> = groups
            .iter()
            .map(|&g| {
                (
                    g,
                    diagonals[g]
                        .quarters
                        .iter()
                        .map(|vs| vs.map(|i| pts[i]))
                        .collect(),
                )
            })
            .collect();

        // rule 1: quasi-regular tetrahedra always win
        for &g in &groups {
            let overlaps = group_coords[&g]
                .iter()
                .any(|q| qrtet_coords.iter().any(|t| tetra_overlap(q, t)));
            if overlaps {
                status.insert(g, Status::Excluded);
                reason.insert(g, "overlaps a quasi-regular tetrahedron".into());
            }
        }

        // rule 2: per octahedron, keep one diagonal
        // an octahedral diagonal has exactly 4 anchors whose short edges
        // form a single cycle
        let mut octas: BTreeMap<[usize; 6], Vec<usize>> = BTreeMap::new();
        for &g in &groups {
            let d = &diagonals[g];
            if d.anchors.len() != 4 && d.quarters.len() != 4 {
                continue;
            }
            if d.anchors.len() == 4 && is_anchor_cycle(&d.anchors, &is_short) {
                let mut key = [
                    d.endpoints.0,
                    d.endpoints.1,
                    d.anchors[0],
                    d.anchors[1],
                    d.anchors[2],
                    d.anchors[3],
                ];
                key.sort_unstable();
                octas.entry(key).or_default().push(g);
            }
        }
        for (key, mut gs) in octas.clone() {
            // pull in every other diagonal between vertices of the figure
            for &g in &groups {
                let (a, b) = diagonals[g].endpoints;
                if key.contains(&a) && key.contains(&b) && !gs.contains(&g) {
                    gs.push(g);
                }
            }
            gs.sort_unstable();
            let winner = gs
                .iter()
                .copied()
                .filter(|g| status[g] == Status::Undecided)
                .min_by(|&a, &b| {
                    (diagonals[a].length, diagonals[a].endpoints)
                        .partial_cmp(&(diagonals[b].length, diagonals[b].endpoints))
                        .unwrap()
                });
            if let Some(w) = winner {
                status.insert(w, Status::Selected);
                log.push(format!(
                    "octahedron {:?}: selected diagonal {:?} (length {:.6})",
                    key, diagonals[w].endpoints, diagonals[w].length
                ));
                for &g in &gs {
                    if g != w && status[&g] == Status::Undecided {
                        status.insert(g, Status::Excluded);
                        reason.insert(g, "alternative diagonal of an octahedron".into());
                    }
                }
            }
        }

        // conflict graph among the remaining groups
        let active: Vec<usize> = groups
            .iter()
            .copied()
            .filter(|g| status[g] != Status::Excluded)
            .collect();
        let mut conflict: BTreeMap<usize, Vec<usize>> =
            active.iter().map(|&g| (g, Vec::new())).collect();
        for (a, &g) in active.iter().enumerate() {
            for &h in active[a + 1..].iter() {
                let overlap = group_coords[&g]
                    .iter()
                    .any(|q| group_coords[&h].iter().any(|r| tetra_overlap(q, r)));
                if overlap {
                    conflict.get_mut(&g).unwrap().push(h);
                    conflict.get_mut(&h).unwrap().push(g);
                }
            }
        }

        // a group conflicting with an octahedron selection loses
        for &g in &active {
            if status[&g] != Status::Selected {
                continue;
            }
            for &h in conflict[&g].clone().iter() {
                match status[&h] {
                    Status::Undecided => {
                        status.insert(h, Status::Excluded);
                        reason.insert(h, "overlaps selected octahedron quarters".into());
                    }
                    Status::Selected => {
                        status.insert(h, Status::Excluded);
                        reason.insert(h, "unresolved: overlapping octahedron selections".into());
                        log.push(format!(
                            "unresolved: octahedron selections {:?} and {:?} overlap; excluded the latter",
                            diagonals[g].endpoints, diagonals[h].endpoints
                        ));
                    }
                    Status::Excluded => {}
                }
            }
        }

        // connected components of undecided groups
        let undecided: Vec<usize> = active
            .iter()
            .copied()
            .filter(|g| status[g] == Status::Undecided)
            .collect();
        let mut seen: BTreeMap<usize, bool> = undecided.iter().map(|&g| (g, false)).collect();
        for &start in &undecided {
            if seen[&start] {
                continue;
            }
            let mut comp = vec![start];
            seen.insert(start, true);
            let mut stack = vec![start];
            while let Some(g) = stack.pop() {
                for &h in &conflict[&g] {
                    if status[&h] == Status::Undecided && !seen[&h] {
                        seen.insert(h, true);
                        comp.push(h);
                        stack.push(h);
                    }
                }
            }
            comp.sort_unstable();
            match comp.len() {
                1 => {
                    status.insert(comp[0], Status::Selected);
                }
                2 => {
                    let (x, y) = (comp[0], comp[1]);
                    resolve_pair(p, &diagonals, x, y, &mut status, &mut reason, &mut log);
                }
                _ => {
                    for &g in &comp {
                        status.insert(g, Status::Excluded);
                        reason.insert(g, "unresolved: multi-way diagonal conflict".into());
                    }
                    log.push(format!(
                        "unresolved: {} mutually conflicting diagonals {:?}; all excluded",
                        comp.len(),
                        comp.iter().map(|&g| diagonals[g].endpoints).collect::<Vec<_>>()
                    ));
                }
            }
        }

        // assemble
        let mut members = qrtets;
        for &g in &groups {
            let selected = status[&g] == Status::Selected;
            diagonals[g].selected = selected;
            if selected {
                for vs in diagonals[g].quarters.clone() {
                    members.push(quarter_member(&diagonals[g], vs));
                }
            } else {
                diagonals[g].exclusion = Some(
                    reason
                        .get(&g)
                        .cloned()
                        .unwrap_or_else(|| "not selected".into()),
                );
            }
        }
        for d in diagonals.iter_mut() {
            if d.quarters.is_empty() {
                d.exclusion = Some("no quarters along this diagonal".into());
            }
        }
        members.sort_unstable();
        members.dedup();
        QSystem {
            members,
            diagonals,
            log,
        }
    }

    /// Members having `v` as a vertex.
    pub fn members_at(&self, v: usize) -> Vec<Member> {
        self.members
            .iter()
            .copied()
            .filter(|m| m.contains_vertex(v))
            .collect()
    }

    /// Context (p, q) of a selected diagonal, by its endpoints in either
    /// order.
    pub fn context_of(&self, endpoints: (usize, usize)) -> Option<(u8, u8)> {
        let key = (
            endpoints.0.min(endpoints.1),
            endpoints.0.max(endpoints.1),
        );
        self.diagonals
            .iter()
            .find(|d| d.endpoints == key && d.selected)
            .map(|d| d.context())
    }
}

fn is_anchor_cycle(anchors: &[usize], is_short: &dyn Fn(usize, usize) -> bool) -> bool {
    // 4 anchors, each short-adjacent to exactly 2 others, connected
    let m: Vec<Vec<bool>> = anchors
        .iter()
        .map(|&a| anchors.iter().map(|&b| a != b && is_short(a, b)).collect())
        .collect();
    if m.iter().any(|row| row.iter().filter(|&&x| x).count() != 2) {
        return false;
    }
    // with degree 2 everywhere, a single 4-cycle is the only connected case
    let mut visited = vec![false; 4];
    let mut stack = vec![0usize];
    visited[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for j in 0..4 {
            if m[i][j] && !visited[j] {
                visited[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == 4
}

/// Resolution of two conflicting diagonal groups.
fn resolve_pair(
    p: &Packing,
    diagonals: &[Diagonal],
    x: usize,
    y: usize,
    status: &mut BTreeMap<usize, Status>,
    reason: &mut BTreeMap<usize, String>,
    log: &mut Vec<String>,
) {
    let (dx, dy) = (&diagonals[x], &diagonals[y]);
    let (px, py) = (dx.anchors.len(), dy.anchors.len());
    if px > 3 && py <= 3 {
        status.insert(x, Status::Selected);
        status.insert(y, Status::Excluded);
        reason.insert(y, "conflicting diagonal with fewer anchors".into());
        return;
    }
    if py > 3 && px <= 3 {
        status.insert(y, Status::Selected);
        status.insert(x, Status::Excluded);
        reason.insert(x, "conflicting diagonal with fewer anchors".into());
        return;
    }
    if px > 3 && py > 3 {
        for &g in &[x, y] {
            status.insert(g, Status::Excluded);
            reason.insert(g, "unresolved: conflicting diagonals both heavily anchored".into());
        }
        log.push(format!(
            "unresolved: diagonals {:?} and {:?} conflict with more than 3 anchors each; both excluded",
            dx.endpoints, dy.endpoints
        ));
        return;
    }
    // neither has more than three anchors: the diagonal passing through a
    // face spanned by the other diagonal and a common anchor is kept
    let x_passes = passes_through(p, dx, dy);
    let y_passes = passes_through(p, dy, dx);
    match (x_passes, y_passes) {
        (true, false) => {
            status.insert(x, Status::Selected);
            status.insert(y, Status::Excluded);
            reason.insert(y, "conflicting diagonal passing above".into());
        }
        (false, true) => {
            status.insert(y, Status::Selected);
            status.insert(x, Status::Excluded);
            reason.insert(x, "conflicting diagonal passing above".into());
        }
        _ => {
            if dx.quarters.len() == 1 && dy.quarters.len() == 1 {
                for &g in &[x, y] {
                    status.insert(g, Status::Excluded);
                    reason.insert(g, "isolated pair".into());
                }
            } else {
                for &g in &[x, y] {
                    status.insert(g, Status::Excluded);
                    reason.insert(g, "unresolved: conflicting diagonals".into());
                }
                log.push(format!(
                    "unresolved: conflict between diagonals {:?} and {:?} matches no known case; both excluded",
                    dx.endpoints, dy.endpoints
                ));
            }
        }
    }
}

/// Whether the segment of diagonal `a` passes through a triangle formed
/// by diagonal `b`'s endpoints and an anchor common to both diagonals.
fn passes_through(p: &Packing, a: &Diagonal, b: &Diagonal) -> bool {
    let (s0, s1) = (p.point(a.endpoints.0), p.point(a.endpoints.1));
    for &anchor in a.anchors.iter().filter(|v| b.anchors.contains(v)) {
        let tri = [p.point(anchor), p.point(b.endpoints.0), p.point(b.endpoints.1)];
        if segment_crosses_triangle(s0, s1, tri) {
            return true;
        }
    }
    false
}

/// Strict proper crossing of an open segment through the interior of a
/// triangle.
pub fn segment_crosses_triangle(p0: V3, p1: V3, tri: [V3; 3]) -> bool {
    let n = cross(sub(tri[1], tri[0]), sub(tri[2], tri[0]));
    let nn = norm(n);
    if nn < AXIS_EPS {
        return false;
    }
    let d = sub(p1, p0);
    let denom = dot(n, d);
    if denom.abs() < AXIS_EPS * nn {
        return false;
    }
    let t = dot(n, sub(tri[0], p0)) / denom;
    if !(1e-9..=1.0 - 1e-9).contains(&t) {
        return false;
    }
    let x = vec3::add(p0, scale(d, t));
    // strict interior via same-side tests against each triangle edge
    for i in 0..3 {
        let (a, b) = (tri[i], tri[(i + 1) % 3]);
        let edge_n = cross(sub(b, a), n);
        let side = dot(edge_n, sub(x, a));
        let ref_side = dot(edge_n, sub(tri[(i + 2) % 3], a));
        if side * ref_side <= 1e-9 * norm(edge_n) {
            return false;
        }
    }
    true
}

/// Whether `x` lies strictly inside the tetrahedron (margin ~1e-9).
pub fn point_in_tetra(x: V3, t: &[V3; 4], margin: f64) -> bool {
    for i in 0..4 {
        let face: Vec<V3> = (0..4).filter(|&k| k != i).map(|k| t[k]).collect();
        let n = cross(sub(face[1], face[0]), sub(face[2], face[0]));
        let nn = norm(n);
        if nn < AXIS_EPS {
            return false;
        }
        let side = dot(n, sub(x, face[0])) / nn;
        let ref_side = dot(n, sub(t[i], face[0])) / nn;
        if ref_side.abs() < AXIS_EPS {
            return false;
        }
        if side * ref_side.signum() < margin {
            return false;
        }
    }
    true
}

/// Separating-axis overlap test for two tetrahedra.  Touching faces or
/// edges (interpenetration below `OVERLAP_MARGIN`) do not count.
pub fn tetra_overlap(a: &[V3; 4], b: &[V3; 4]) -> bool {
    let ca = centroid(a);
    let cb = centroid(b);
    let ra = a.iter().map(|p| dist(*p, ca)).fold(0.0, f64::max);
    let rb = b.iter().map(|p| dist(*p, cb)).fold(0.0, f64::max);
    if dist(ca, cb) > ra + rb {
        return false;
    }
    const FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];
    const EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];
    let mut axes: Vec<V3> = Vec::with_capacity(44);
    for f in FACES {
        axes.push(cross(sub(a[f[1]], a[f[0]]), sub(a[f[2]], a[f[0]])));
        axes.push(cross(sub(b[f[1]], b[f[0]]), sub(b[f[2]], b[f[0]])));
    }
    for ea in EDGES {
        let da = sub(a[ea[1]], a[ea[0]]);
        for eb in EDGES {
            axes.push(cross(da, sub(b[eb[1]], b[eb[0]])));
        }
    }
    for axis in axes {
        let len = norm(axis);
        if len < AXIS_EPS {
            continue;
        }
        let u = scale(axis, 1.0 / len);
        let pa = project(a, u);
        let pb = project(b, u);
        if pa.1 <= pb.0 + OVERLAP_MARGIN || pb.1 <= pa.0 + OVERLAP_MARGIN {
            return false;
        }
    }
    true
}

pub(crate) fn centroid(t: &[V3; 4]) -> V3 {
    let mut c = [0.0; 3];
    for p in t {
        c = vec3::add(c, *p);
    }
    scale(c, 0.25)
}

fn project(t: &[V3; 4], u: V3) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in t {
        let v = dot(*p, u);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

// ---------------------------------------------------------------------------
// standard regions

/// One face of the arc system around a vertex.
#[derive(Debug, Clone, Serialize)]
pub struct Region {
    /// Vertex ids along the boundary walk (cyclic); empty for the whole
    /// sphere when the vertex has no arcs around it.
    pub boundary: Vec<usize>,
    /// Area of the region on the unit sphere.
    pub solid_angle: f64,
    /// Interior angle at each boundary entry, aligned with `boundary`.
    pub angles: Vec<f64>,
}

impl Region {
    pub fn side_count(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_triangle(&self) -> bool {
        self.boundary.len() == 3
    }
}

/// The partition of directions around `center` into standard regions.
#[derive(Debug, Clone, Serialize)]
pub struct StandardRegions {
    pub center: usize,
    /// Neighbors within 2.51 that carry at least one arc.
    pub nodes: Vec<usize>,
    /// Arc endpoints (vertex id pairs, i < j).
    pub arcs: Vec<(usize, usize)>,
    pub regions: Vec<Region>,
}

#[derive(Debug, Error)]
pub enum RegionError {
    #[error("arcs ({0},{1}) and ({2},{3}) cross")]
    ArcsCross(usize, usize, usize, usize),
    #[error("arc graph is not a single spherical map: V={v} E={e} F={f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("region areas sum to {sum}, expected 4*pi")]
    AreaSum { sum: f64 },
}

/// Builds the standard regions around `center`: nodes are neighbors
/// within 2.51, arcs join node pairs within 2.51 of each other, and the
/// regions are the faces the arcs cut on the unit sphere of directions.
pub fn standard_regions(p: &Packing, center: usize) -> Result<StandardRegions, RegionError> {
    let c = p.point(center);
    let near = p.neighbors_within(center, TWO_T0);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (a, &u) in near.iter().enumerate() {
        for &w in near[a + 1..].iter() {
            if dist(p.point(u), p.point(w)) <= TWO_T0 {
                arcs.push((u, w));
            }
        }
    }
    if arcs.is_empty() {
        return Ok(StandardRegions {
            center,
            nodes: Vec::new(),
            arcs,
            regions: vec![Region {
                boundary: Vec::new(),
                solid_angle: 4.0 * std::f64::consts::PI,
                angles: Vec::new(),
            }],
        });
    }
    let mut nodes: Vec<usize> = arcs.iter().flat_map(|&(u, w)| [u, w]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let dir: BTreeMap<usize, V3> = nodes
        .iter()
        .map(|&v| (v, normalize(sub(p.point(v), c))))
        .collect();

    // arcs must not cross
    for (i, &(a, b)) in arcs.iter().enumerate() {
        for &(u, w) in arcs[i + 1..].iter() {
            if a == u || a == w || b == u || b == w {
                continue;
            }
            if great_arcs_cross(dir[&a], dir[&b], dir[&u], dir[&w]) {
                return Err(RegionError::ArcsCross(a, b, u, w));
            }
        }
    }

    // rotation system: neighbors of each node sorted by tangent angle
    let mut theta: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut rot: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &v in &nodes {
        let u_hat = dir[&v];
        let k = (0..3).min_by(|&a, &b| u_hat[a].abs().partial_cmp(&u_hat[b].abs()).unwrap()).unwrap();
        let mut axis = [0.0; 3];
        axis[k] = 1.0;
        let e1 = normalize(cross(axis, u_hat));
        let e2 = cross(u_hat, e1);
        let mut nbrs: Vec<usize> = arcs
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        for &w in &nbrs {
            let d = dir[&w];
            let t = sub(d, scale(u_hat, dot(d, u_hat)));
            theta.insert((v, w), dot(t, e2).atan2(dot(t, e1)));
        }
        nbrs.sort_by(|&a, &b| theta[&(v, a)].partial_cmp(&theta[&(v, b)]).unwrap());
        rot.insert(v, nbrs);
    }

    // face walk: successor of directed edge (u, v) is (v, predecessor of u
    // in the rotation at v); this traces each face with its interior on
    // the left as seen from outside the sphere
    let mut directed: Vec<(usize, usize)> = arcs
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    directed.sort_unstable();
    let mut used: BTreeMap<(usize, usize), bool> =
        directed.iter().map(|&e| (e, false)).collect();
    let mut regions = Vec::new();
    let tau = 2.0 * std::f64::consts::PI;
    for &start in &directed {
        if used[&start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut edge = start;
        loop {
            used.insert(edge, true);
            walk.push(edge);
            let (u, v) = edge;
            let order = &rot[&v];
            let pos = order.iter().position(|&w| w == u).unwrap();
            let w = order[(pos + order.len() - 1) % order.len()];
            edge = (v, w);
            if edge == start {
                break;
            }
        }
        // interior angle at v between incoming (u,v) and outgoing (v,w)
        let nsteps = walk.len();
        let mut angles = vec![0.0; nsteps];
        let mut angle_sum = 0.0;
        for (i, &(u, v)) in walk.iter().enumerate() {
            let (_, w) = walk[(i + 1) % nsteps];
            let mut gap = (theta[&(v, u)] - theta[&(v, w)]).rem_euclid(tau);
            if gap == 0.0 {
                gap = tau;
            }
            angles[(i + 1) % nsteps] = gap;
            angle_sum += gap;
        }
        let area = angle_sum - (nsteps as f64 - 2.0) * std::f64::consts::PI;
        regions.push(Region {
            boundary: walk.iter().map(|&(u, _)| u).collect(),
            solid_angle: area,
            angles,
        });
    }

    let v_count = nodes.len();
    let e_count = arcs.len();
    let f_count = regions.len();
    if v_count + f_count != e_count + 2 {
        return Err(RegionError::Euler {
            v: v_count,
            e: e_count,
            f: f_count,
        });
    }
    let sum: f64 = regions.iter().map(|r| r.solid_angle).sum();
    if (sum - 4.0 * std::f64::consts::PI).abs() > 1e-6 {
        return Err(RegionError::AreaSum { sum });
    }
    Ok(StandardRegions {
        center,
        nodes,
        arcs,
        regions,
    })
}

/// Whether a unit direction lies inside a region of the partition, by
/// winding of the boundary around it.
pub fn direction_in_region(p: &Packing, sr: &StandardRegions, region: &Region, u: V3) -> bool {
    if region.boundary.is_empty() {
        return true;
    }
    let c = p.point(sr.center);
    let u_hat = normalize(u);
    let k = (0..3)
        .min_by(|&a, &b| u_hat[a].abs().partial_cmp(&u_hat[b].abs()).unwrap())
        .unwrap();
    let mut axis = [0.0; 3];
    axis[k] = 1.0;
    let e1 = normalize(cross(axis, u_hat));
    let e2 = cross(u_hat, e1);
    let angles: Vec<f64> = region
        .boundary
        .iter()
        .map(|&v| {
            let d = normalize(sub(p.point(v), c));
            let t = sub(d, scale(u_hat, dot(d, u_hat)));
            dot(t, e2).atan2(dot(t, e1))
        })
        .collect();
    let mut winding = 0.0;
    for i in 0..angles.len() {
        let mut delta = angles[(i + 1) % angles.len()] - angles[i];
        while delta > std::f64::consts::PI {
            delta -= 2.0 * std::f64::consts::PI;
        }
        while delta < -std::f64::consts::PI {
            delta += 2.0 * std::f64::consts::PI;
        }
        winding += delta;
    }
    // +2pi inside; -2pi when the region contains the antipodal direction
    winding > std::f64::consts::PI
}

fn great_arcs_cross(a: V3, b: V3, u: V3, w: V3) -> bool {
    // proper crossing of minor great-circle arcs a-b and u-w
    let n1 = cross(a, b);
    let n2 = cross(u, w);
    let t = cross(n1, n2);
    let tn = norm(t);
    if tn < AXIS_EPS {
        return false;
    }
    for cand in [scale(t, 1.0 / tn), scale(t, -1.0 / tn)] {
        let on_ab = dot(cross(a, cand), n1) > 1e-12
            && dot(cross(cand, b), n1) > 1e-12;
        let on_uw = dot(cross(u, cand), n2) > 1e-12
            && dot(cross(cand, w), n2) > 1e-12;
        if on_ab && on_uw {
            return true;
        }
    }
    false
}
