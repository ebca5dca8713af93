//! Lattice-simplex combinatorics for the edge-degeneration criterion on
//! surfaces in fake weighted projective 3-spaces.
//!
//! A 3-dimensional lattice simplex `Δ` defines a toric 3-fold `P_Δ` (a fake
//! weighted projective space) and a family of nondegenerate surfaces with
//! Newton polytope `Δ`. Cutting `Δ` along an edge `e` with interior lattice
//! points gives a degeneration; when the relative-interior counts of the cut
//! triangles outweigh those of the pieces, the generic surface has Picard
//! number greater than one.
//!
//! Module map:
//!
//! * [`lattice`]: exact integer linear algebra (normal forms, indices,
//!   affine lattices).
//! * [`polytope`]: simplices, faces, lattice point enumeration and `l*`.
//! * [`fine_interior`]: the Fine interior `F(Δ)` with a certified dimension.
//! * [`subdivision`]: subdivisions along an edge and their validation.
//! * [`criterion`]: hypotheses, Hodge bookkeeping and the verdict.
//! * [`fwps`]: weight systems, multiplicity and simplices from weights.
//! * [`harness`]: file formats, batch search, catalogs and reports.

pub mod criterion;
pub mod error;
pub mod fine_interior;
pub mod fwps;
pub mod harness;
pub mod lattice;
pub mod polytope;
pub mod subdivision;

pub use error::{Error, Result};
