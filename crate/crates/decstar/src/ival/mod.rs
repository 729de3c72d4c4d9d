//! Outward-rounded interval arithmetic, interval versions of the scoring
//! functions, and a branch-and-bound verifier with a registry of the
//! inequality certificates used by the density bound.
//!
//! The layering mirrors the floating-point side of the crate:
//!
//! * [`interval`] — the [`Interval`] type with directed rounding,
//! * [`funcs`] — interval counterparts of the `geom`/`score` formulas,
//! * [`verify`] — the sampling falsifier and the interval bisection engine,
//! * [`registry`] — the table of inequalities and distance certificates.
//!
//! Every interval operation returns an enclosure of the true real result,
//! so a verified outcome is a machine-checked proof that the inequality
//! holds over its whole domain, up to the correctness of the hardware's
//! rounded arithmetic.

pub mod funcs;
pub mod interval;
pub mod registry;
pub mod verify;

pub use interval::Interval;
pub use registry::{distance_certificates, lookup, registry};
pub use verify::{
    check_certificate, verify, CalcCase, CalcEntry, CertResult, Condition, DistanceCert,
    FrontierBox, Outcome, Trilean, VerifyBudget, VerifyReport, VerifyStats,
};
