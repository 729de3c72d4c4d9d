//! Scoring geometry for sphere packings.
//!
//! The crate decomposes the space around a vertex of a saturated sphere
//! packing into tetrahedral clusters and truncated Voronoi pieces, scores
//! each piece with a compression/Voronoi hybrid, and converts the total
//! score into an effective density bound.  A companion interval-arithmetic
//! layer re-implements every scoring function with outward rounding and
//! drives a branch-and-bound verifier over a registry of inequalities.
//!
//! Modules:
//! * [`constants`]: shared numeric constants (`pt`, `delta_oct`, radii).
//! * [`geom`]: edge-length simplex kernel (volumes, dihedrals, solid
//!   angles, circumradii, face orientation, canonical realization).
//! * [`score`]: scoring functions on simplices and truncated cells.
//! * [`lattice`]: generators for test packings (cubic close packing,
//!   hexagonal close packing, random saturated packings).
//! * [`qsys`]: the tetrahedral cluster system of a packing and the
//!   spherical region map around a vertex.
//! * [`star`]: decomposition stars, cell volume estimation, total scores
//!   and the density bound.
//! * [`ival`]: interval arithmetic, interval scoring functions, the
//!   branch-and-bound verifier and the inequality registry.
//! * [`oracle`]: slow reference implementations used to cross-check the
//!   fast paths in tests.

pub mod constants;
pub mod exec;
pub mod geom;
pub mod ival;
pub mod lattice;
pub mod oracle;
pub mod qsys;
pub mod score;
pub mod star;

pub use exec::Parallelism;
