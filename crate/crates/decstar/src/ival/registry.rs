//! The registry of inequality certificates.
//!
//! Each entry states a claim of the form "margin < 0 (or ≤ 0) on a box
//! domain, subject to side conditions".  The margin is provided twice: an
//! interval enclosure for the bisection engine and a floating-point form
//! for the sampling falsifier, the latter built from the production
//! `geom`/`score` code so the two implementations cross-check each other.
//!
//! Identifiers are the stable names used by the command-line `verify`
//! subcommand.  Domains are closed boxes of edge lengths `[y1..y6]`;
//! dimensions pinned to a single value are written `[v, v]`.

use super::funcs as fi;
use super::funcs::Box6;
use super::interval::Interval;
use super::verify::{CalcCase, CalcEntry, Condition, DistanceCert, Trilean};
use crate::geom::{self, EdgeSimplex, Face, Orientation};
use crate::score;
use std::f64::consts::{PI, SQRT_2};

/// Length of the long diagonal, `sqrt(8)`.
pub const SQRT8: f64 = 2.0 * SQRT_2;

const S: [f64; 2] = [2.0, 2.51];
const D: [f64; 2] = [2.51, SQRT8];
const T0: f64 = 1.255;
const PIN: [f64; 2] = [0.0, 0.0];

// ---------------------------------------------------------------- helpers

fn simplex(y: &[f64; 6]) -> Option<EdgeSimplex> {
    EdgeSimplex::new(*y).ok().filter(|s| !s.is_degenerate())
}

fn pt_i() -> Interval {
    fi::pt()
}

fn pt_f() -> f64 {
    crate::constants::pt()
}

// -------------------------------------------------------------- conditions

fn c_delta_box(b: &Box6) -> Trilean {
    let d = fi::delta_x(&fi::squares(b));
    if d.lo > 0.0 {
        Trilean::True
    } else if d.hi <= 0.0 {
        Trilean::False
    } else {
        Trilean::Unknown
    }
}
fn c_delta_pt(y: &[f64; 6]) -> bool {
    geom::delta_x(y.map(|v| v * v)) > 0.0
}

/// The simplex is nondegenerate.
const DELTA_POS: Condition = Condition {
    name: "nondegenerate",
    on_box: c_delta_box,
    at_point: c_delta_pt,
};

fn eta_cmp_box(e: Interval, le: bool) -> Trilean {
    let s2 = Interval::sqrt2();
    if le {
        if e.hi <= s2.lo {
            Trilean::True
        } else if e.lo > s2.hi {
            Trilean::False
        } else {
            Trilean::Unknown
        }
    } else if e.lo >= s2.hi {
        Trilean::True
    } else if e.hi < s2.lo {
        Trilean::False
    } else {
        Trilean::Unknown
    }
}

fn c_eta234_le_box(b: &Box6) -> Trilean {
    eta_cmp_box(fi::eta(b[1], b[2], b[3]), true)
}
fn c_eta234_le_pt(y: &[f64; 6]) -> bool {
    geom::eta(y[1], y[2], y[3]).map_or(false, |e| e <= SQRT_2)
}
/// Circumradius of the face on edges 2, 3, 4 is at most √2.
const ETA234_LE: Condition = Condition {
    name: "eta234 <= sqrt2",
    on_box: c_eta234_le_box,
    at_point: c_eta234_le_pt,
};

fn c_eta234_ge_box(b: &Box6) -> Trilean {
    eta_cmp_box(fi::eta(b[1], b[2], b[3]), false)
}
fn c_eta234_ge_pt(y: &[f64; 6]) -> bool {
    geom::eta(y[1], y[2], y[3]).map_or(false, |e| e >= SQRT_2)
}
/// Circumradius of the face on edges 2, 3, 4 is at least √2.
const ETA234_GE: Condition = Condition {
    name: "eta234 >= sqrt2",
    on_box: c_eta234_ge_box,
    at_point: c_eta234_ge_pt,
};

fn c_eta126_le_box(b: &Box6) -> Trilean {
    eta_cmp_box(fi::eta(b[0], b[1], b[5]), true)
}
fn c_eta126_le_pt(y: &[f64; 6]) -> bool {
    geom::eta(y[0], y[1], y[5]).map_or(false, |e| e <= SQRT_2)
}
/// Circumradius of the face on edges 1, 2, 6 is at most √2.
const ETA126_LE: Condition = Condition {
    name: "eta126 <= sqrt2",
    on_box: c_eta126_le_box,
    at_point: c_eta126_le_pt,
};

fn c_orient234_neg_box(b: &Box6) -> Trilean {
    let d = fi::face_height(b, Face::E234);
    if d.hi < 0.0 {
        Trilean::True
    } else if d.lo >= 0.0 {
        Trilean::False
    } else {
        Trilean::Unknown
    }
}
fn c_orient234_neg_pt(y: &[f64; 6]) -> bool {
    simplex(y).is_some_and(|s| {
        s.face_orientation(Face::E234)
            .is_ok_and(|o| o == Orientation::Negative)
    })
}
/// The face on edges 2, 3, 4 is negatively oriented.
const ORIENT234_NEG: Condition = Condition {
    name: "face(2,3,4) negatively oriented",
    on_box: c_orient234_neg_box,
    at_point: c_orient234_neg_pt,
};

// ---------------------------------------------------------------- margins

fn i_vor(b: &Box6) -> Interval {
    fi::vor(b)
}
fn p_vor(y: &[f64; 6]) -> f64 {
    simplex(y)
        .and_then(|s| score::vor_analytic(&s).ok())
        .unwrap_or(f64::NAN)
}

fn i_two_gamma_swap(b: &Box6) -> Interval {
    let h = fi::hat(b);
    2.0 * fi::gamma(b) + fi::vor0(b) - fi::vor0(&h)
}
fn p_two_gamma_swap(y: &[f64; 6]) -> f64 {
    (|| {
        let s = simplex(y)?;
        let h = s.hat();
        Some(2.0 * score::gamma(&s).ok()? + score::vor0(&s).ok()? - score::vor0(&h).ok()?)
    })()
    .unwrap_or(f64::NAN)
}

fn i_vor_pair_swap(b: &Box6) -> Interval {
    let h = fi::hat(b);
    fi::vor(b) + fi::vor(&h) + fi::vor0(b) - fi::vor0(&h)
}
fn p_vor_pair_swap(y: &[f64; 6]) -> f64 {
    (|| {
        let s = simplex(y)?;
        let h = s.hat();
        Some(
            score::vor_analytic(&s).ok()?
                + score::vor_analytic(&h).ok()?
                + score::vor0(&s).ok()?
                - score::vor0(&h).ok()?,
        )
    })()
    .unwrap_or(f64::NAN)
}

fn i_vor_plus_104pt(b: &Box6) -> Interval {
    fi::vor(b) + 1.04 * pt_i()
}
fn p_vor_plus_104pt(y: &[f64; 6]) -> f64 {
    p_vor(y) + 1.04 * pt_f()
}

fn i_vor_plus_052pt(b: &Box6) -> Interval {
    fi::vor(b) + 0.52 * pt_i()
}
fn p_vor_plus_052pt(y: &[f64; 6]) -> f64 {
    p_vor(y) + 0.52 * pt_f()
}

fn p_k(y: &[f64; 6]) -> f64 {
    simplex(y)
        .and_then(|s| score::k_score(&s).ok())
        .unwrap_or(f64::NAN)
}

fn i_k_plus_104pt(b: &Box6) -> Interval {
    fi::k_score(b) + 1.04 * pt_i()
}
fn p_k_plus_104pt(y: &[f64; 6]) -> f64 {
    p_k(y) + 1.04 * pt_f()
}

fn i_k_plus_052pt(b: &Box6) -> Interval {
    fi::k_score(b) + 0.52 * pt_i()
}
fn p_k_plus_052pt(y: &[f64; 6]) -> f64 {
    p_k(y) + 0.52 * pt_f()
}

fn i_k_plus_031pt(b: &Box6) -> Interval {
    fi::k_score(b) + 0.31 * pt_i()
}
fn p_k_plus_031pt(y: &[f64; 6]) -> f64 {
    p_k(y) + 0.31 * pt_f()
}

fn i_mu_plus_021pt(b: &Box6) -> Interval {
    fi::mu(b) + 0.21 * pt_i()
}
fn p_mu(y: &[f64; 6]) -> f64 {
    simplex(y).and_then(|s| score::mu(&s).ok()).unwrap_or(f64::NAN)
}
fn p_mu_plus_021pt(y: &[f64; 6]) -> f64 {
    p_mu(y) + 0.21 * pt_f()
}

fn i_half_swap_plus_021pt(b: &Box6) -> Interval {
    let h = fi::hat(b);
    (fi::mu(b) + fi::mu(&h) + fi::vor0(b) - fi::vor0(&h)) / 2.0 + 0.21 * pt_i()
}
fn p_half_swap_plus_021pt(y: &[f64; 6]) -> f64 {
    (|| {
        let s = simplex(y)?;
        let h = s.hat();
        Some(
            (score::mu(&s).ok()? + score::mu(&h).ok()? + score::vor0(&s).ok()?
                - score::vor0(&h).ok()?)
                / 2.0,
        )
    })()
    .map(|v| v + 0.21 * pt_f())
    .unwrap_or(f64::NAN)
}

fn i_mu_plus_042pt(b: &Box6) -> Interval {
    fi::mu(b) + 0.42 * pt_i()
}
fn p_mu_plus_042pt(y: &[f64; 6]) -> f64 {
    p_mu(y) + 0.42 * pt_f()
}

fn i_crowned_pair(b: &Box6) -> Interval {
    let h = fi::hat(b);
    fi::mu(b) + fi::mu(&h)
        + (1.0 - fi::dihedral(b) / Interval::pi()) * fi::crown(b[0] / 2.0)
        + 2.0 * fi::anc(b[0], b[1], b[5])
        - fi::vor0(b)
        - fi::vor0(&h)
}
fn p_crowned_pair(y: &[f64; 6]) -> f64 {
    (|| {
        let s = simplex(y)?;
        let h = s.hat();
        Some(
            score::mu(&s).ok()?
                + score::mu(&h).ok()?
                + (1.0 - s.dihedral().ok()? / PI) * score::crown(y[0] / 2.0)
                + 2.0 * score::anc(y[0], y[1], y[5]).ok()?
                - score::vor0(&s).ok()?
                - score::vor0(&h).ok()?,
        )
    })()
    .unwrap_or(f64::NAN)
}

fn i_crown_bound(b: &Box6) -> Interval {
    fi::crown(b[0]) + 0.1378
}
fn p_crown_bound(y: &[f64; 6]) -> f64 {
    score::crown(y[0]) + 0.1378
}

fn i_anc_bound(b: &Box6) -> Interval {
    fi::anc(b[0], b[1], b[2]) - 0.0263
}
fn p_anc_bound(y: &[f64; 6]) -> f64 {
    score::anc(y[0], y[1], y[2])
        .map(|a| a - 0.0263)
        .unwrap_or(f64::NAN)
}

fn i_wedged_single(b: &Box6) -> Interval {
    fi::mu(b) + (1.0 - fi::dihedral(b) / Interval::two_pi()) * (-0.1378) + 2.0 * 0.0263
        - fi::vor0(b)
}
fn p_wedged_single(y: &[f64; 6]) -> f64 {
    (|| {
        let s = simplex(y)?;
        Some(
            score::mu(&s).ok()? + (1.0 - s.dihedral().ok()? / (2.0 * PI)) * (-0.1378)
                + 2.0 * 0.0263
                - score::vor0(&s).ok()?,
        )
    })()
    .unwrap_or(f64::NAN)
}

fn i_wide_pair(b: &Box6) -> Interval {
    let h = fi::hat(b);
    fi::mu(b) + fi::mu(&h) - fi::vor0(b) - fi::vor0(&h)
        - 0.02 * (Interval::half_pi() - fi::dihedral(b))
}
fn p_wide_pair(y: &[f64; 6]) -> f64 {
    (|| {
        let s = simplex(y)?;
        let h = s.hat();
        Some(
            score::mu(&s).ok()? + score::mu(&h).ok()? - score::vor0(&s).ok()?
                - score::vor0(&h).ok()?
                - 0.02 * (PI / 2.0 - s.dihedral().ok()?),
        )
    })()
    .unwrap_or(f64::NAN)
}

fn i_dih_above_1075(b: &Box6) -> Interval {
    1.075 - fi::dihedral(b)
}
fn p_dih_above_1075(y: &[f64; 6]) -> f64 {
    simplex(y)
        .and_then(|s| s.dihedral().ok())
        .map(|d| 1.075 - d)
        .unwrap_or(f64::NAN)
}

fn i_dih_above_1(b: &Box6) -> Interval {
    1.0 - fi::dihedral(b)
}
fn p_dih_above_1(y: &[f64; 6]) -> f64 {
    simplex(y)
        .and_then(|s| s.dihedral().ok())
        .map(|d| 1.0 - d)
        .unwrap_or(f64::NAN)
}

fn i_face456_not_neg(b: &Box6) -> Interval {
    -fi::face_height(b, Face::E456)
}
fn p_face456_not_neg(y: &[f64; 6]) -> f64 {
    simplex(y)
        .and_then(|s| {
            s.relabel(Face::E456.canonical_perm())
                .circumcenter_height()
                .ok()
        })
        .map(|d| -d)
        .unwrap_or(f64::NAN)
}

fn i_cone_bound(b: &Box6) -> Interval {
    fi::cone_score(b[0]) + 4.52 * pt_i()
}
fn p_cone_bound(y: &[f64; 6]) -> f64 {
    score::cone_score(y[0]) + 4.52 * pt_f()
}

// ---------------------------------------------------------------- entries

static ENTRIES: [CalcEntry; 20] = [
    CalcEntry {
        id: "3.13.1",
        statement: "vor(S) <= 0 on flat quarters whose diagonal face through the scoring corner is negatively oriented",
        strict: false,
        cases: &[CalcCase {
            label: "flat",
            domain: [S, S, S, D, S, S],
            conditions: &[DELTA_POS, ORIENT234_NEG],
            margin: i_vor,
            margin_point: p_vor,
        }],
        notes: "The conditioned face is the one spanned by edges 2, 3, 4: it contains the scoring corner and the long edge.  This identification is flagged for review.",
    },
    CalcEntry {
        id: "3.13.2",
        statement: "vor(S) <= 0 on upright quarters",
        strict: false,
        cases: &[CalcCase {
            label: "upright",
            domain: [D, S, S, S, S, S],
            conditions: &[DELTA_POS],
            margin: i_vor,
            margin_point: p_vor,
        }],
        notes: "The supremum 0 is attained at the corner where the diagonal reaches sqrt8, so a bounded interval run is expected to leave a residual frontier there.",
    },
    CalcEntry {
        id: "3.13.3",
        statement: "2 Gamma(S) + vor0(S) - vor0(S-hat) <= 0 on upright quarters",
        strict: false,
        cases: &[CalcCase {
            label: "upright",
            domain: [D, S, S, S, S, S],
            conditions: &[DELTA_POS],
            margin: i_two_gamma_swap,
            margin_point: p_two_gamma_swap,
        }],
        notes: "",
    },
    CalcEntry {
        id: "3.13.4",
        statement: "vor(S) + vor(S-hat) + vor0(S) - vor0(S-hat) <= 0 on upright quarters",
        strict: false,
        cases: &[CalcCase {
            label: "upright",
            domain: [D, S, S, S, S, S],
            conditions: &[DELTA_POS],
            margin: i_vor_pair_swap,
            margin_point: p_vor_pair_swap,
        }],
        notes: "",
    },
    CalcEntry {
        id: "4.1.1",
        statement: "vor(S) < -1.04 pt on the two printed domains with small face circumradii",
        strict: true,
        cases: &[
            CalcCase {
                label: "y6 short",
                domain: [S, [2.51, 2.7], [2.51, 2.7], [2.0, 2.32], S, S],
                conditions: &[DELTA_POS, ETA234_LE],
                margin: i_vor_plus_104pt,
                margin_point: p_vor_plus_104pt,
            },
            CalcCase {
                label: "y6 long",
                domain: [S, [2.51, 2.7], [2.51, 2.7], [2.0, 2.32], S, [2.51, 2.7]],
                conditions: &[DELTA_POS, ETA234_LE, ETA126_LE],
                margin: i_vor_plus_104pt,
                margin_point: p_vor_plus_104pt,
            },
        ],
        notes: "The upper limits 2.32 and 2.7 restate the circumradius conditions as box bounds.",
    },
    CalcEntry {
        id: "4.1.2",
        statement: "K(S) < -1.04 pt on the two printed domains with a large face circumradius",
        strict: true,
        cases: &[
            CalcCase {
                label: "y6 short",
                domain: [S, D, D, S, S, S],
                conditions: &[DELTA_POS, ETA234_GE],
                margin: i_k_plus_104pt,
                margin_point: p_k_plus_104pt,
            },
            CalcCase {
                label: "y6 long",
                domain: [S, D, D, S, S, [2.51, 2.7]],
                conditions: &[DELTA_POS, ETA234_GE, ETA126_LE],
                margin: i_k_plus_104pt,
                margin_point: p_k_plus_104pt,
            },
        ],
        notes: "",
    },
    CalcEntry {
        id: "4.1.3",
        statement: "vor(S) < -0.52 pt with eta234 <= sqrt2",
        strict: true,
        cases: &[CalcCase {
            label: "base",
            domain: [S, S, [2.51, 2.7], [2.51, 2.7], S, S],
            conditions: &[DELTA_POS, ETA234_LE],
            margin: i_vor_plus_052pt,
            margin_point: p_vor_plus_052pt,
        }],
        notes: "",
    },
    CalcEntry {
        id: "4.1.4",
        statement: "K(S) < -0.52 pt with eta234 >= sqrt2",
        strict: true,
        cases: &[CalcCase {
            label: "base",
            domain: [S, S, D, D, [2.0, 2.2], S],
            conditions: &[DELTA_POS, ETA234_GE],
            margin: i_k_plus_052pt,
            margin_point: p_k_plus_052pt,
        }],
        notes: "",
    },
    CalcEntry {
        id: "4.1.5",
        statement: "K(S) < -0.31 pt with eta234 >= sqrt2",
        strict: true,
        cases: &[CalcCase {
            label: "base",
            domain: [S, S, D, D, S, S],
            conditions: &[DELTA_POS, ETA234_GE],
            margin: i_k_plus_031pt,
            margin_point: p_k_plus_031pt,
        }],
        notes: "",
    },
    CalcEntry {
        id: "4.1.6",
        statement: "sigma(Q) < -0.21 pt for upright quarters in contexts (2,1) and (3,1)",
        strict: true,
        cases: &[
            CalcCase {
                label: "(2,1)",
                domain: [D, S, S, S, S, [2.2, 2.51]],
                conditions: &[DELTA_POS],
                margin: i_mu_plus_021pt,
                margin_point: p_mu_plus_021pt,
            },
            CalcCase {
                label: "(3,1)",
                domain: [D, S, S, S, S, [2.2, 2.51]],
                conditions: &[DELTA_POS],
                margin: i_half_swap_plus_021pt,
                margin_point: p_half_swap_plus_021pt,
            },
        ],
        notes: "Context (2,1) scores mu; context (3,1) scores the symmetrized half-sum.",
    },
    CalcEntry {
        id: "4.1.7",
        statement: "sigma(Q) < -0.42 pt for upright quarters in context (2,1)",
        strict: true,
        cases: &[CalcCase {
            label: "(2,1)",
            domain: [D, S, S, S, [2.2, 2.51], [2.2, 2.51]],
            conditions: &[DELTA_POS],
            margin: i_mu_plus_042pt,
            margin_point: p_mu_plus_042pt,
        }],
        notes: "",
    },
    CalcEntry {
        id: "4.7.1",
        statement: "mu(Q) + mu(Q-hat) + (1 - dih/pi) crown(y1/2) + 2 anc(y1,y2,y6) < vor0(Q) + vor0(Q-hat) on upright quarters",
        strict: true,
        cases: &[CalcCase {
            label: "upright",
            domain: [D, S, S, S, S, S],
            conditions: &[DELTA_POS],
            margin: i_crowned_pair,
            margin_point: p_crowned_pair,
        }],
        notes: "The crown fraction here is dih/pi as printed; the wedge bound 4.7.4 uses dih/(2 pi).  The discrepancy is preserved, not resolved.",
    },
    CalcEntry {
        id: "4.7.2",
        statement: "crown(h) < -0.1378 for h in [1.255, sqrt2]",
        strict: true,
        cases: &[CalcCase {
            label: "h",
            domain: [[T0, SQRT_2], PIN, PIN, PIN, PIN, PIN],
            conditions: &[],
            margin: i_crown_bound,
            margin_point: p_crown_bound,
        }],
        notes: "One-dimensional; the margin is tightest at h = 1.255.",
    },
    CalcEntry {
        id: "4.7.3",
        statement: "anc(y1, y2, y6) < 0.0263 for y1 in [2.51, sqrt8], y2 and y6 in [2, 2.51]",
        strict: true,
        cases: &[CalcCase {
            label: "anc",
            domain: [D, S, S, PIN, PIN, PIN],
            conditions: &[],
            margin: i_anc_bound,
            margin_point: p_anc_bound,
        }],
        notes: "Three-dimensional: the first three box dimensions carry y1, y2, y6.",
    },
    CalcEntry {
        id: "4.7.4",
        statement: "mu(Q) + (1 - dih/(2 pi)) (-0.1378) + 2 (0.0263) < vor0(Q) on upright quarters",
        strict: true,
        cases: &[CalcCase {
            label: "upright",
            domain: [D, S, S, S, S, S],
            conditions: &[DELTA_POS],
            margin: i_wedged_single,
            margin_point: p_wedged_single,
        }],
        notes: "Companion wedge form of 4.7.2/4.7.3 with the crown and anchor bounds substituted.",
    },
    CalcEntry {
        id: "4.7.5",
        statement: "mu(Q) + mu(Q-hat) < vor0(Q) + vor0(Q-hat) + 0.02 (pi/2 - dih) for y1 in [2.69, sqrt8]",
        strict: true,
        cases: &[CalcCase {
            label: "upright",
            domain: [[2.69, SQRT8], S, S, S, S, S],
            conditions: &[DELTA_POS],
            margin: i_wide_pair,
            margin_point: p_wide_pair,
        }],
        notes: "",
    },
    CalcEntry {
        id: "1.7.1",
        statement: "dih(S(sqrt8, 2, y3, 2, y5, 2)) > 1.075",
        strict: true,
        cases: &[CalcCase {
            label: "two free",
            domain: [[SQRT8, SQRT8], [2.0, 2.0], S, [2.0, 2.0], S, [2.0, 2.0]],
            conditions: &[DELTA_POS],
            margin: i_dih_above_1075,
            margin_point: p_dih_above_1075,
        }],
        notes: "Edges 3 and 5 are free; the others are pinned as printed.",
    },
    CalcEntry {
        id: "1.7.2",
        statement: "dih(S(sqrt8, y2, y3, 2, y5, y6)) > 1",
        strict: true,
        cases: &[CalcCase {
            label: "four free",
            domain: [[SQRT8, SQRT8], S, S, [2.0, 2.0], S, S],
            conditions: &[DELTA_POS],
            margin: i_dih_above_1,
            margin_point: p_dih_above_1,
        }],
        notes: "",
    },
    CalcEntry {
        id: "2.2",
        statement: "the face on edges 4, 5, 6 is not negatively oriented when an apex distance reaches 2.51",
        strict: false,
        cases: &[
            CalcCase {
                label: "apex (2, 2, 2.51)",
                domain: [[2.0, 2.0], [2.0, 2.0], [2.51, 2.51], S, S, D],
                conditions: &[DELTA_POS],
                margin: i_face456_not_neg,
                margin_point: p_face456_not_neg,
            },
            CalcCase {
                label: "apex (2, 2.51, 2)",
                domain: [[2.0, 2.0], [2.51, 2.51], [2.0, 2.0], S, S, D],
                conditions: &[DELTA_POS],
                margin: i_face456_not_neg,
                margin_point: p_face456_not_neg,
            },
            CalcCase {
                label: "apex (2.51, 2, 2)",
                domain: [[2.51, 2.51], [2.0, 2.0], [2.0, 2.0], S, S, D],
                conditions: &[DELTA_POS],
                margin: i_face456_not_neg,
                margin_point: p_face456_not_neg,
            },
        ],
        notes: "The free dimensions are the face edges y4, y5 in [2, 2.51] and the diagonal y6 in [2.51, sqrt8].  The minimum of the orientation functional is 0, attained at a corner, so a bounded interval run is expected to leave a residual frontier.",
    },
    CalcEntry {
        id: "cone",
        statement: "the cone score 2 pi (1 - h/eta0(h)) phi(h, eta0(h)) is at most -4.52 pt for h in [1.255, sqrt2]",
        strict: false,
        cases: &[CalcCase {
            label: "h",
            domain: [[T0, SQRT_2], PIN, PIN, PIN, PIN, PIN],
            conditions: &[],
            margin: i_cone_bound,
            margin_point: p_cone_bound,
        }],
        notes: "One-dimensional; the margin is tightest at h = sqrt2.",
    },
];

/// All registered inequality entries.
pub fn registry() -> &'static [CalcEntry] {
    &ENTRIES
}

/// Entry with the given identifier, if registered.
pub fn lookup(id: &str) -> Option<&'static CalcEntry> {
    ENTRIES.iter().find(|e| e.id == id)
}

static CERTS: [DistanceCert; 4] = [
    DistanceCert {
        id: "L1.3",
        statement: "apexes across the face of a flat quarter pair are farther apart than 2.51",
        edges: [2.0, 2.0, 2.0, 2.51, 2.51, SQRT8],
        apex: [2.0, 2.0, 2.0],
        exceeds: 2.51,
    },
    DistanceCert {
        id: "L1.4",
        statement: "apexes across a shared quasi-regular face are farther apart than sqrt8",
        edges: [2.0, 2.0, 2.0, 2.51, 2.51, 2.51],
        apex: [2.0, 2.0, 2.2],
        exceeds: SQRT8,
    },
    DistanceCert {
        id: "L1.5",
        statement: "apexes across a face with one long edge are farther apart than sqrt8",
        edges: [2.0, 2.0, 2.0, SQRT8, 2.51, 2.51],
        apex: [2.0, 2.0, 2.51],
        exceeds: SQRT8,
    },
    DistanceCert {
        id: "L1.6",
        statement: "apexes of interlocking quarters along a shared diagonal are farther apart than sqrt8",
        edges: [2.51, 2.0, 2.0, 2.51, SQRT8, 2.51],
        apex: [2.0, 2.0, 2.0],
        exceeds: SQRT8,
    },
];

/// The pinned-simplex distance certificates.
pub fn distance_certificates() -> &'static [DistanceCert] {
    &CERTS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Parallelism;
    use crate::ival::verify::{check_certificate, verify, Outcome, VerifyBudget};

    #[test]
    fn identifiers_are_unique_and_complete() {
        let ids: Vec<&str> = registry().iter().map(|e| e.id).collect();
        assert_eq!(ids.len(), 20);
        for id in [
            "3.13.1", "3.13.2", "3.13.3", "3.13.4", "4.1.1", "4.1.2", "4.1.3", "4.1.4", "4.1.5",
            "4.1.6", "4.1.7", "4.7.1", "4.7.2", "4.7.3", "4.7.4", "4.7.5", "1.7.1", "1.7.2",
            "2.2", "cone",
        ] {
            assert!(lookup(id).is_some(), "missing {id}");
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn lookup_exposes_the_printed_domain() {
        let e = lookup("4.1.6").unwrap();
        assert!(e.strict);
        assert_eq!(e.cases.len(), 2);
        let d = e.cases[0].domain;
        assert_eq!(d[0], [2.51, SQRT8]);
        assert_eq!(d[1], [2.0, 2.51]);
        assert_eq!(d[5], [2.2, 2.51]);
        assert_eq!(e.cases[0].label, "(2,1)");
        assert_eq!(e.cases[1].label, "(3,1)");
    }

    #[test]
    fn distance_certificates_are_confirmed() {
        let certs = distance_certificates();
        assert_eq!(certs.len(), 4);
        for c in certs {
            let r = check_certificate(c);
            assert!(r.confirmed, "{} not confirmed: [{}, {}]", c.id, r.value_lo, r.value_hi);
            assert!(r.value_hi - r.value_lo < 1e-9);
        }
        let l3 = check_certificate(&certs[0]);
        assert!((l3.value_lo - 2.601_862_616_410_152).abs() < 1e-9);
    }

    fn quick_budget() -> VerifyBudget {
        VerifyBudget {
            max_boxes: 200_000,
            max_depth: 44,
            samples: 2_000,
            seed: 0,
            mode: Parallelism::default(),
        }
    }

    #[test]
    fn crown_bound_is_verified() {
        let report = verify(lookup("4.7.2").unwrap(), &quick_budget());
        assert!(report.outcome.is_verified(), "{:?}", report.outcome);
    }

    #[test]
    fn cone_bound_is_verified() {
        let report = verify(lookup("cone").unwrap(), &quick_budget());
        assert!(report.outcome.is_verified(), "{:?}", report.outcome);
    }

    #[test]
    fn pinned_dihedral_bounds_are_verified() {
        let r1 = verify(lookup("1.7.1").unwrap(), &quick_budget());
        assert!(r1.outcome.is_verified(), "{:?}", r1.outcome);
        let r2 = verify(lookup("1.7.2").unwrap(), &quick_budget());
        assert!(r2.outcome.is_verified(), "{:?}", r2.outcome);
    }

    #[test]
    fn no_entry_is_falsified_under_bounded_runs() {
        let budget = VerifyBudget {
            max_boxes: 512,
            max_depth: 20,
            samples: 4_000,
            seed: 0,
            mode: Parallelism::default(),
        };
        for entry in registry() {
            let report = verify(entry, &budget);
            assert!(
                !report.outcome.is_falsified(),
                "{} falsified: {:?}",
                entry.id,
                report.outcome
            );
            if let Outcome::Inconclusive { frontier } = &report.outcome {
                assert!(!frontier.is_empty());
            }
        }
    }
}
