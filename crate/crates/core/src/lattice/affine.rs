use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{integer_kernel, row_echelon, smith_normal_form, IntegerMatrix};
use super::vector::LatticeVector;

/// Index of a subgroup of `Z^3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeIndex {
    Finite(#[serde(with = "crate::harness::serde_bigint")] BigInt),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeIndex::Finite(n) => write!(f, "{n}"),
            LatticeIndex::Infinite => f.write_str("infinite"),
        }
    }
}

/// Index in `Z^3` of the subgroup generated by `generators`.
pub fn lattice_index(generators: &[LatticeVector]) -> LatticeIndex {
    let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| g.0.to_vec()).collect();
    lattice_index_n(&rows, 3)
}

pub(crate) fn lattice_index_n(rows: &[Vec<BigInt>], dim: usize) -> LatticeIndex {
    let m = IntegerMatrix::from_rows(rows, dim);
    let divisors = smith_normal_form(&m).elementary_divisors();
    if divisors.len() < dim {
        LatticeIndex::Infinite
    } else {
        LatticeIndex::Finite(divisors.iter().fold(BigInt::one(), |acc, d| acc * d))
    }
}

/// An affine sublattice `origin + Z basis` of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineLattice {
    pub origin: Vec<BigInt>,
    /// Rows in Hermite normal form.
    pub basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl AffineLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer coordinates of `p` in this lattice, or `None` when `p` is
    /// not a point of it.
    pub fn coordinates(&self, p: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut residual: Vec<BigInt> = p.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let (c, rem) = residual[pc].div_rem(&row[pc]);
            if !rem.is_zero() {
                return None;
            }
            for (r, b) in residual.iter_mut().zip(row) {
                *r -= &c * b;
            }
            coords.push(c);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    /// The point with the given lattice coordinates.
    pub fn point(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut p = self.origin.clone();
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, b) in p.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        p
    }
}

/// The lattice `aff(points) ∩ Z^3` as an origin plus a Hermite-reduced basis.
pub fn affine_lattice_basis(points: &[LatticeVector]) -> (LatticeVector, Vec<LatticeVector>) {
    let rows: Vec<Vec<BigInt>> = points.iter().map(|p| p.0.to_vec()).collect();
    let lat = affine_lattice_n(&rows);
    let to3 = |v: &Vec<BigInt>| LatticeVector([v[0].clone(), v[1].clone(), v[2].clone()]);
    (to3(&lat.origin), lat.basis.iter().map(to3).collect())
}

/// `aff(points) ∩ Z^n` for nonempty `points` of a common length `n`.
pub(crate) fn affine_lattice_n(points: &[Vec<BigInt>]) -> AffineLattice {
    assert!(!points.is_empty(), "affine lattice of an empty point set");
    let n = points[0].len();
    let origin = points[0].clone();
    let diffs: Vec<Vec<BigInt>> =
        points[1..].iter().map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect()).collect();
    let diffs = IntegerMatrix::from_rows(&diffs, n);
    // Saturate: the lattice orthogonal to everything orthogonal to the differences.
    let normals = integer_kernel(&diffs);
    let saturated = if normals.is_empty() {
        IntegerMatrix::identity(n)
    } else {
        IntegerMatrix::from_rows(&integer_kernel(&IntegerMatrix::from_rows(&normals, n)), n)
    };
    let ech = row_echelon(&saturated);
    let basis = (0..ech.rank).map(|i| ech.form.row(i).to_vec()).collect();
    AffineLattice { origin, basis, pivots: ech.pivots }
}
