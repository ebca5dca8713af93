//! Exact integer and rational linear algebra over `Z^3`, with the rank-4
//! helpers needed to embed weighted hyperplanes.

mod affine;
mod matrix;
mod reduce;
mod vector;

pub use affine::{affine_lattice_basis, lattice_index, AffineLattice, LatticeIndex};
pub use matrix::{integer_kernel, row_echelon, smith_normal_form, IntegerMatrix, RowEchelon, SmithForm};
pub use reduce::lll_reduce;
pub use vector::{content, gcd_reduce, HalfSpace, LatticeVector, RationalVector};

pub(crate) use affine::affine_lattice_n;
