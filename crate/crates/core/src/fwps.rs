//! Weight systems of (fake) weighted projective 3-spaces.
//!
//! The normal fan of a lattice simplex has four rays `ν_0..ν_3` satisfying a
//! unique primitive positive relation `Σ q_i ν_i = 0`; the `q_i` are the
//! weights. The index of the sublattice generated by the rays is the
//! multiplicity: 1 for a genuine weighted projective space, larger for a
//! fake one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::serde_bigint;
use crate::lattice::{affine_lattice_n, content, lattice_index, IntegerMatrix, LatticeIndex, LatticeVector};
use crate::polytope::Simplex3;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightSystem {
    /// `weights[i]` belongs to the ray opposite vertex `i`.
    #[serde(with = "serde_bigint::vec")]
    pub weights: Vec<BigInt>,
    #[serde(with = "serde_bigint")]
    pub multiplicity: BigInt,
    pub well_formed: bool,
}

impl WeightSystem {
    /// Weights in ascending order.
    pub fn sorted(&self) -> Vec<BigInt> {
        let mut w = self.weights.clone();
        w.sort();
        w
    }

    pub fn is_genuine(&self) -> bool {
        self.multiplicity.is_one()
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.sorted().iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "({}), multiplicity {}, {}",
            w.join(","),
            self.multiplicity,
            if self.is_genuine() { "genuine" } else { "fake" }
        )
    }
}

/// Primitive inward facet normals; ray `i` is opposite vertex `i`.
pub fn normal_fan_rays(s: &Simplex3) -> [LatticeVector; 4] {
    s.facet_halfspaces().expect("valid simplex").map(|h| h.normal().clone())
}

/// True iff every three of the weights are coprime.
pub fn is_well_formed(q: &[BigInt]) -> bool {
    (0..q.len()).all(|skip| {
        let triple: Vec<BigInt> = q.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| x.clone()).collect();
        content(&triple).is_one()
    })
}

pub fn weights_from_simplex(s: &Simplex3) -> WeightSystem {
    let rays = normal_fan_rays(s);
    // Signed 3x3 minors give the kernel of the 3x4 ray matrix.
    let mut q: Vec<BigInt> = (0..4)
        .map(|i| {
            let cols: Vec<&LatticeVector> = (0..4).filter(|&j| j != i).map(|j| &rays[j]).collect();
            let det = cols[0].dot(&cols[1].cross(cols[2]));
            if i % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect();
    if q[0].is_negative() {
        q.iter_mut().for_each(|x| *x = -x.clone());
    }
    let g = content(&q);
    q.iter_mut().for_each(|x| *x = x.div_floor(&g));
    assert!(q.iter().all(Signed::is_positive), "rays of a simplex have a positive relation");
    let relation = rays.iter().zip(&q).fold(LatticeVector::zero(), |acc, (r, w)| &acc + &r.scale(w));
    assert!(relation.is_zero(), "weighted ray sum must vanish");

    let multiplicity = match lattice_index(&rays) {
        LatticeIndex::Finite(n) => n,
        LatticeIndex::Infinite => unreachable!("rays of a complete fan span Z^3 rationally"),
    };
    WeightSystem { well_formed: is_well_formed(&q), weights: q, multiplicity }
}

/// The lattice simplex `{x ∈ R^4_{>=0} : Σ q_i x_i = d}` in coordinates of
/// its own affine lattice. Vertex `i` is `(d / q_i) e_i`.
pub fn simplex_from_weights(q: &[u64; 4], d: u64) -> Result<Simplex3> {
    if q.contains(&0) || d == 0 {
        return Err(Error::InvalidWeights("weights and degree must be positive".to_string()));
    }
    let qb: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
    if !content(&qb).is_one() {
        return Err(Error::InvalidWeights(format!("weights {q:?} are not coprime")));
    }
    if q.iter().any(|&w| !d.is_multiple_of(w)) {
        return Err(Error::RationalVertex);
    }
    let points: Vec<Vec<BigInt>> = (0..4)
        .map(|i| {
            let mut p = vec![BigInt::zero(); 4];
            p[i] = BigInt::from(d / q[i]);
            p
        })
        .collect();
    let lattice = affine_lattice_n(&points);
    let coords: Vec<LatticeVector> = points
        .iter()
        .map(|p| {
            let c = lattice.coordinates(p).expect("vertices lie on their lattice");
            LatticeVector([c[0].clone(), c[1].clone(), c[2].clone()])
        })
        .collect();
    Simplex3::new(coords.try_into().expect("four vertices"))
}

/// Rays of the fan as rows of an integer matrix.
pub fn ray_matrix(s: &Simplex3) -> IntegerMatrix {
    let rows: Vec<Vec<BigInt>> = normal_fan_rays(s).iter().map(|r| r.0.to_vec()).collect();
    IntegerMatrix::from_rows(&rows, 3)
}
