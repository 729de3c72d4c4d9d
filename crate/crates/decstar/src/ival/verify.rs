//! Branch-and-bound verification of inequality claims over boxes.
//!
//! A claim says: for every point of a box domain satisfying the side
//! conditions, a margin function is negative (strict) or nonpositive.
//! Verification runs in two phases:
//!
//! 1. a sampling pass evaluates the floating-point margin at the domain
//!    midpoint, the corners, and a deterministic stream of random points,
//!    hunting for counterexamples cheaply;
//! 2. an interval pass bisects the domain breadth-first, pruning boxes
//!    whose conditions fail, discharging boxes whose margin enclosure is
//!    decisively negative, and reporting a rigorous counterexample when an
//!    enclosure is decisively positive on a box wholly inside the
//!    conditions.
//!
//! Both phases are deterministic functions of the entry and the budget;
//! wall time is neither consulted nor reported.  When the box budget or
//! the depth limit runs out the remaining frontier is returned for
//! resumption.

use super::funcs::{self, Box6};
use super::interval::Interval;
use crate::exec::{self, Parallelism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Three-valued answer of a condition on a box.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trilean {
    True,
    False,
    Unknown,
}

/// Side condition attached to a claim.
pub struct Condition {
    pub name: &'static str,
    /// Decides the condition over a whole box, conservatively.
    pub on_box: fn(&Box6) -> Trilean,
    /// Decides the condition at a sample point.
    pub at_point: fn(&[f64; 6]) -> bool,
}

/// One conjunct of a claim: a domain, side conditions, and the margin
/// that must stay below zero.
pub struct CalcCase {
    pub label: &'static str,
    /// Per-dimension bounds; a dimension with equal bounds is pinned.
    pub domain: [[f64; 2]; 6],
    pub conditions: &'static [Condition],
    /// Interval enclosure of the margin over a box.
    pub margin: fn(&Box6) -> Interval,
    /// Floating-point margin at a point; NaN skips the sample.
    pub margin_point: fn(&[f64; 6]) -> f64,
}

/// A registered inequality: one or more cases sharing an identifier.
pub struct CalcEntry {
    pub id: &'static str,
    pub statement: &'static str,
    /// Strict claims require margin < 0; non-strict allow equality.
    pub strict: bool,
    pub cases: &'static [CalcCase],
    pub notes: &'static str,
}

/// Resource limits for one verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyBudget {
    /// Total interval boxes across all cases of the entry.
    pub max_boxes: u64,
    /// Bisection depth limit; boxes stuck at the limit go to the frontier.
    pub max_depth: u32,
    /// Total sample points across all cases of the entry.
    pub samples: u64,
    pub seed: u64,
    pub mode: Parallelism,
}

impl Default for VerifyBudget {
    fn default() -> Self {
        VerifyBudget {
            max_boxes: 1_000_000,
            max_depth: 48,
            samples: 100_000,
            seed: 0,
            mode: Parallelism::default(),
        }
    }
}

/// An undischarged box, serialized for resumption.
#[derive(Debug, Clone, Serialize)]
pub struct FrontierBox {
    pub case: &'static str,
    pub lo: [f64; 6],
    pub hi: [f64; 6],
    pub depth: u32,
}

/// Result of a verification run.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status")]
pub enum Outcome {
    /// Every box of every case was discharged: the claim holds.
    Verified,
    /// A point satisfying the conditions violates the claim.
    Falsified {
        case: &'static str,
        witness: [f64; 6],
        margin: f64,
    },
    /// The budget ran out; the remaining boxes are undecided.
    Inconclusive { frontier: Vec<FrontierBox> },
}

impl Outcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, Outcome::Verified)
    }
    pub fn is_falsified(&self) -> bool {
        matches!(self, Outcome::Falsified { .. })
    }
}

/// Work counters for one verification run.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyStats {
    pub boxes: u64,
    pub waves: u32,
    pub max_depth_reached: u32,
    pub pruned: u64,
    pub verified_boxes: u64,
    pub samples_tested: u64,
    /// Boxes processed per bisection depth.
    pub depth_histogram: Vec<u64>,
}

impl VerifyStats {
    fn record_depth(&mut self, depth: u32) {
        let d = depth as usize;
        if self.depth_histogram.len() <= d {
            self.depth_histogram.resize(d + 1, 0);
        }
        self.depth_histogram[d] += 1;
        self.max_depth_reached = self.max_depth_reached.max(depth);
    }
}

/// Outcome and statistics for one entry.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub id: &'static str,
    pub statement: &'static str,
    pub outcome: Outcome,
    pub stats: VerifyStats,
}

/// Positive floating-point margins below this are not treated as
/// counterexamples by the sampling pass; several claims attain their
/// supremum of exactly zero on the domain boundary.
const SAMPLE_TOL: f64 = 1e-12;

/// Verify one registered entry under a budget.
pub fn verify(entry: &CalcEntry, budget: &VerifyBudget) -> VerifyReport {
    let mut stats = VerifyStats::default();

    let outcome = run(entry, budget, &mut stats);
    VerifyReport {
        id: entry.id,
        statement: entry.statement,
        outcome,
        stats,
    }
}

fn run(entry: &CalcEntry, budget: &VerifyBudget, stats: &mut VerifyStats) -> Outcome {
    let ncases = entry.cases.len().max(1) as u64;
    for (ci, case) in entry.cases.iter().enumerate() {
        if let Some(out) = sample_case(case, ci, budget.samples / ncases, budget.seed, stats) {
            return out;
        }
    }

    let per_case = (budget.max_boxes / ncases).max(1);
    let mut frontier: Vec<FrontierBox> = Vec::new();
    for case in entry.cases {
        match bisect_case(case, entry.strict, per_case, budget, stats) {
            CaseResult::Verified => {}
            CaseResult::Falsified { witness, margin } => {
                return Outcome::Falsified {
                    case: case.label,
                    witness,
                    margin,
                };
            }
            CaseResult::Inconclusive(mut boxes) => frontier.append(&mut boxes),
        }
    }
    if frontier.is_empty() {
        Outcome::Verified
    } else {
        Outcome::Inconclusive { frontier }
    }
}

/// Sampling falsification for one case; `Some` on a counterexample.  The
/// midpoint and the corners of the domain are tested first, then a
/// deterministic stream of uniform points, `samples` points in total.
fn sample_case(
    case: &CalcCase,
    index: usize,
    samples: u64,
    seed: u64,
    stats: &mut VerifyStats,
) -> Option<Outcome> {
    if samples == 0 {
        return None;
    }
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let free: Vec<usize> = (0..6)
        .filter(|&i| case.domain[i][1] > case.domain[i][0])
        .collect();

    fn test(case: &CalcCase, p: [f64; 6], stats: &mut VerifyStats) -> Option<Outcome> {
        stats.samples_tested += 1;
        if !case.conditions.iter().all(|c| (c.at_point)(&p)) {
            return None;
        }
        let m = (case.margin_point)(&p);
        if m.is_nan() || m <= SAMPLE_TOL {
            return None;
        }
        Some(Outcome::Falsified {
            case: case.label,
            witness: p,
            margin: m,
        })
    }

    let mut left = samples;
    let midpoint: [f64; 6] = std::array::from_fn(|i| 0.5 * (case.domain[i][0] + case.domain[i][1]));
    left -= 1;
    if let Some(out) = test(case, midpoint, stats) {
        return Some(out);
    }
    for mask in 0..(1u64 << free.len()) {
        if left == 0 {
            return None;
        }
        let mut p: [f64; 6] = std::array::from_fn(|i| case.domain[i][0]);
        for (bit, &dim) in free.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                p[dim] = case.domain[dim][1];
            }
        }
        left -= 1;
        if let Some(out) = test(case, p, stats) {
            return Some(out);
        }
    }
    while left > 0 {
        let p: [f64; 6] = std::array::from_fn(|i| {
            let [a, b] = case.domain[i];
            if b > a {
                rng.gen_range(a..=b)
            } else {
                a
            }
        });
        left -= 1;
        if let Some(out) = test(case, p, stats) {
            return Some(out);
        }
    }
    None
}

enum CaseResult {
    Verified,
    Falsified { witness: [f64; 6], margin: f64 },
    Inconclusive(Vec<FrontierBox>),
}

#[derive(Clone, Copy)]
enum BoxClass {
    Pruned,
    Discharged,
    Counterexample,
    Undecided,
}

fn classify(case: &CalcCase, strict: bool, b: &Box6) -> BoxClass {
    let mut all_true = true;
    for c in case.conditions {
        match (c.on_box)(b) {
            Trilean::False => return BoxClass::Pruned,
            Trilean::Unknown => all_true = false,
            Trilean::True => {}
        }
    }
    let m = (case.margin)(b);
    let ok = if strict { m.hi < 0.0 } else { m.hi <= 0.0 };
    if ok {
        return BoxClass::Discharged;
    }
    let bad = if strict { m.lo >= 0.0 } else { m.lo > 0.0 };
    if bad && all_true {
        return BoxClass::Counterexample;
    }
    BoxClass::Undecided
}

fn widest_dim(b: &Box6) -> Option<usize> {
    let mut k = None;
    let mut w = 0.0;
    for (i, iv) in b.iter().enumerate() {
        let wi = iv.width();
        if wi > w {
            w = wi;
            k = Some(i);
        }
    }
    k
}

fn to_frontier(case: &CalcCase, b: &Box6, depth: u32) -> FrontierBox {
    FrontierBox {
        case: case.label,
        lo: b.map(|iv| iv.lo),
        hi: b.map(|iv| iv.hi),
        depth,
    }
}

fn bisect_case(
    case: &CalcCase,
    strict: bool,
    max_boxes: u64,
    budget: &VerifyBudget,
    stats: &mut VerifyStats,
) -> CaseResult {
    let root: Box6 = std::array::from_fn(|i| Interval::new(case.domain[i][0], case.domain[i][1]));
    let mut frontier: Vec<(Box6, u32)> = vec![(root, 0)];
    let mut stuck: Vec<FrontierBox> = Vec::new();
    let mut used: u64 = 0;

    while !frontier.is_empty() {
        if used >= max_boxes {
            stuck.extend(frontier.iter().map(|(b, d)| to_frontier(case, b, *d)));
            return CaseResult::Inconclusive(stuck);
        }
        let take = ((max_boxes - used) as usize).min(frontier.len());
        let rest = frontier.split_off(take);
        let wave = frontier;
        let classes = exec::map_collect(budget.mode, &wave, |(b, _)| classify(case, strict, b));
        used += wave.len() as u64;
        stats.boxes += wave.len() as u64;
        stats.waves += 1;

        let mut next: Vec<(Box6, u32)> = Vec::new();
        for ((b, depth), class) in wave.iter().zip(classes) {
            stats.record_depth(*depth);
            match class {
                BoxClass::Pruned => stats.pruned += 1,
                BoxClass::Discharged => stats.verified_boxes += 1,
                BoxClass::Counterexample => {
                    let witness: [f64; 6] = std::array::from_fn(|i| b[i].midpoint());
                    let margin = (case.margin_point)(&witness);
                    return CaseResult::Falsified { witness, margin };
                }
                BoxClass::Undecided => {
                    let splittable = widest_dim(b).and_then(|k| {
                        let m = b[k].midpoint();
                        (m > b[k].lo && m < b[k].hi).then_some(k)
                    });
                    match splittable {
                        Some(k) if *depth < budget.max_depth => {
                            let m = b[k].midpoint();
                            let mut left = *b;
                            let mut right = *b;
                            left[k] = Interval::new(b[k].lo, m);
                            right[k] = Interval::new(m, b[k].hi);
                            next.push((left, depth + 1));
                            next.push((right, depth + 1));
                        }
                        _ => stuck.push(to_frontier(case, b, *depth)),
                    }
                }
            }
        }
        next.extend(rest);
        frontier = next;
    }

    if stuck.is_empty() {
        CaseResult::Verified
    } else {
        CaseResult::Inconclusive(stuck)
    }
}

/// A pinned-simplex distance certificate: the interval evaluation of the
/// apex distance must exceed the stated bound.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceCert {
    pub id: &'static str,
    pub statement: &'static str,
    /// Edge lengths of the base simplex.
    pub edges: [f64; 6],
    /// Distances from the opposite apex to vertices 1, 2, 3.
    pub apex: [f64; 3],
    /// The distance bound that must be strictly exceeded.
    pub exceeds: f64,
}

/// Interval confirmation of a distance certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CertResult {
    pub id: &'static str,
    pub statement: &'static str,
    pub value_lo: f64,
    pub value_hi: f64,
    pub exceeds: f64,
    pub confirmed: bool,
}

pub fn check_certificate(cert: &DistanceCert) -> CertResult {
    let y: Box6 = cert.edges.map(Interval::point);
    let apex = cert.apex.map(Interval::point);
    let v = funcs::edist(&y, apex);
    CertResult {
        id: cert.id,
        statement: cert.statement,
        value_lo: v.lo,
        value_hi: v.hi,
        exceeds: cert.exceeds,
        confirmed: v.lo > cert.exceeds,
    }
}
