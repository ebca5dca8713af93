//! Exact LLL reduction of a row basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::IntegerMatrix;

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram-Schmidt data of the rows: orthogonal vectors and coefficients.
fn gram_schmidt(b: &IntegerMatrix) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    let n = b.rows();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let row: Vec<BigRational> = b.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let mut v = row.clone();
        for j in 0..i {
            let norm = dot_q(&star[j], &star[j]);
            if norm.is_zero() {
                continue;
            }
            mu[i][j] = dot_q(&row, &star[j]) / norm;
            for (vk, sk) in v.iter_mut().zip(&star[j]) {
                *vk -= &mu[i][j] * sk;
            }
        }
        star.push(v);
    }
    (star, mu)
}

/// Nearest integer, halves rounded up.
fn round(q: &BigRational) -> BigInt {
    let twice = q * BigRational::from_integer(BigInt::from(2)) + BigRational::one();
    twice.numer().div_floor(&(twice.denom() * 2))
}

/// LLL-reduces the rows of a full-row-rank matrix with `δ = 3/4`.
/// Returns `(reduced, transform)` with `transform * m = reduced` and
/// `transform` unimodular. Deterministic in its input.
pub fn lll_reduce(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let n = m.rows();
    let mut b = m.clone();
    let mut t = IntegerMatrix::identity(n);
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (_, mu) = gram_schmidt(&b);
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                let neg = -q;
                b.add_row_multiple(k, j, &neg);
                t.add_row_multiple(k, j, &neg);
            }
        }
        let (star, mu) = gram_schmidt(&b);
        let lhs = dot_q(&star[k], &star[k]);
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * dot_q(&star[k - 1], &star[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap_rows(k, k - 1);
            t.swap_rows(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    (b, t)
}
