//! Independent recount of the numbers behind a positive verdict.
//!
//! Every `l*` is recomputed by scanning the ambient integer bounding box of
//! the simplex and solving for exact rational barycentric coordinates, with
//! no use of the lattice frames the main pipeline counts in.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::criterion::{Decision, HodgeBudget};
use crate::harness::serde_bigint;
use crate::lattice::{LatticeVector, RationalVector};
use crate::polytope::{barycentric, Simplex3};
use crate::subdivision::subdivide_along_oriented_edge;

/// Relative-interior lattice points of `conv(vertices)`, counted by
/// brute force in the ambient box.
///
/// With `E` the edge matrix from `v0` and `A` an invertible maximal minor,
/// a point `p` has barycentric coordinates `adj(A) (p - v0) / det A` on the
/// chosen rows; the remaining rows are checked for membership in the hull.
pub fn brute_force_l_star(vertices: &[LatticeVector]) -> BigInt {
    let k = vertices.len() - 1;
    let v0 = &vertices[0];
    let edges: Vec<LatticeVector> = vertices[1..].iter().map(|v| v - v0).collect();
    let Some((rows, det, adj)) = invertible_minor(&edges) else {
        // Affinely dependent input: fall back to the rational solve.
        return scan_box(vertices, |p| {
            barycentric(vertices, &RationalVector::from(p)).is_some_and(|l| l.iter().all(Signed::is_positive))
        });
    };
    scan_box(vertices, |p| {
        let w = p - v0;
        let mu: Vec<BigInt> = (0..k).map(|i| (0..k).map(|j| &adj[i][j] * &w.0[rows[j]]).sum()).collect();
        let mu0 = &det - mu.iter().sum::<BigInt>();
        let positive = |x: &BigInt| if det.is_positive() { x.is_positive() } else { x.is_negative() };
        if !positive(&mu0) || !mu.iter().all(positive) {
            return false;
        }
        (0..3).all(|r| {
            let combo: BigInt = edges.iter().zip(&mu).map(|(e, m)| &e.0[r] * m).sum();
            combo == &w.0[r] * &det
        })
    })
}

type Minor = (Vec<usize>, BigInt, Vec<Vec<BigInt>>);

/// Rows of a nonsingular `k x k` minor of the `3 x k` edge matrix, with its
/// determinant and adjugate.
fn invertible_minor(edges: &[LatticeVector]) -> Option<Minor> {
    let k = edges.len();
    let row_sets: Vec<Vec<usize>> = match k {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        3 => vec![vec![0, 1, 2]],
        _ => return None,
    };
    for rows in row_sets {
        let a: Vec<Vec<BigInt>> = rows.iter().map(|&r| edges.iter().map(|e| e.0[r].clone()).collect()).collect();
        let (det, adj) = det_adj(&a);
        if !det.is_zero() {
            return Some((rows, det, adj));
        }
    }
    None
}

fn det_adj(a: &[Vec<BigInt>]) -> (BigInt, Vec<Vec<BigInt>>) {
    match a.len() {
        0 => (BigInt::one(), vec![]),
        1 => (a[0][0].clone(), vec![vec![BigInt::one()]]),
        2 => (
            &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0],
            vec![vec![a[1][1].clone(), -&a[0][1]], vec![-&a[1][0], a[0][0].clone()]],
        ),
        _ => {
            let cof = |i: usize, j: usize| {
                let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let m = &a[r[0]][c[0]] * &a[r[1]][c[1]] - &a[r[0]][c[1]] * &a[r[1]][c[0]];
                if (i + j).is_multiple_of(2) {
                    m
                } else {
                    -m
                }
            };
            let det: BigInt = (0..3).map(|j| &a[0][j] * cof(0, j)).sum();
            // adj[i][j] is the (j, i) cofactor.
            let adj = (0..3).map(|i| (0..3).map(|j| cof(j, i)).collect()).collect();
            (det, adj)
        }
    }
}

fn scan_box(vertices: &[LatticeVector], mut inside: impl FnMut(&LatticeVector) -> bool) -> BigInt {
    let lo: Vec<BigInt> = (0..3).map(|i| vertices.iter().map(|v| &v.0[i]).min().unwrap().clone()).collect();
    let hi: Vec<BigInt> = (0..3).map(|i| vertices.iter().map(|v| &v.0[i]).max().unwrap().clone()).collect();
    let mut count = BigInt::zero();
    let mut x = lo[0].clone();
    while x <= hi[0] {
        let mut y = lo[1].clone();
        while y <= hi[1] {
            let mut z = lo[2].clone();
            while z <= hi[2] {
                if inside(&LatticeVector([x.clone(), y.clone(), z.clone()])) {
                    count += 1;
                }
                z += 1;
            }
            y += 1;
        }
        x += 1;
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recount {
    #[serde(with = "serde_bigint")]
    pub p_g: BigInt,
    #[serde(with = "serde_bigint")]
    pub pieces_sum: BigInt,
    #[serde(with = "serde_bigint")]
    pub cuts_sum: BigInt,
    #[serde(with = "serde_bigint")]
    pub margin: BigInt,
}

/// Rebuilds the maximal subdivision along `edge` and recounts it.
pub fn recount_edge(s: &Simplex3, edge: (usize, usize)) -> Option<Recount> {
    let sub = subdivide_along_oriented_edge(s, edge.0, edge.1).ok()?;
    let p_g = brute_force_l_star(s.vertices());
    let pieces_sum: BigInt = sub.pieces.iter().map(|p| brute_force_l_star(p.vertices())).sum();
    let cuts_sum: BigInt = sub.cuts.iter().map(|c| brute_force_l_star(c.vertices())).sum();
    Some(Recount { margin: &cuts_sum - &pieces_sum, p_g, pieces_sum, cuts_sum })
}

/// Whether a recount reproduces a budget exactly.
pub fn matches_budget(recount: &Recount, budget: &HodgeBudget) -> bool {
    recount.p_g == budget.p_g
        && recount.pieces_sum == budget.piece_pg.iter().sum::<BigInt>()
        && recount.cuts_sum == budget.cut_genera.iter().sum::<BigInt>()
        && recount.margin == budget.margin
        && recount.p_g == &recount.pieces_sum + &recount.cuts_sum
}

/// `Some(true)` when a positive verdict survives the recount, `Some(false)`
/// when it does not, `None` for other verdicts.
pub fn reverify(s: &Simplex3, decision: &Decision) -> Option<bool> {
    reverify_with(decision, recount_edge(s, decision.witness_edge()?).as_ref())
}

/// As [`reverify`], with the recount of the witness edge already done.
pub fn reverify_with(decision: &Decision, recount: Option<&Recount>) -> Option<bool> {
    decision.witness_edge()?;
    let budget = decision.reported_budget()?;
    Some(recount.is_some_and(|r| matches_budget(r, budget)))
}
