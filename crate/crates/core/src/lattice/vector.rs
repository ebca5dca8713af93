use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A point of the rank-3 lattice `Z^3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub [BigInt; 3]);

impl LatticeVector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        LatticeVector([x.into(), y.into(), z.into()])
    }

    pub fn from_i64(c: [i64; 3]) -> Self {
        LatticeVector::new(c[0], c[1], c[2])
    }

    pub fn zero() -> Self {
        LatticeVector::new(0, 0, 0)
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        &self.0[0] * &other.0[0] + &self.0[1] * &other.0[1] + &self.0[2] * &other.0[2]
    }

    pub fn cross(&self, other: &LatticeVector) -> LatticeVector {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &other.0;
        LatticeVector([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(&self, k: &BigInt) -> LatticeVector {
        LatticeVector(self.0.clone().map(|c| c * k))
    }

    /// Largest absolute coordinate.
    pub fn max_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.clone().map(BigRational::from_integer))
    }

    /// Coordinates as `i64`, when they fit.
    pub fn to_i64(&self) -> Option<[i64; 3]> {
        let mut out = [0i64; 3];
        for (o, c) in out.iter_mut().zip(self.0.iter()) {
            *o = i64::try_from(c).ok()?;
        }
        Some(out)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector([&self.0[0] + &rhs.0[0], &self.0[1] + &rhs.0[1], &self.0[2] + &rhs.0[2]])
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector([&self.0[0] - &rhs.0[0], &self.0[1] - &rhs.0[1], &self.0[2] - &rhs.0[2]])
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.clone().map(|c| -c))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// A point with exact rational coordinates. `Ratio` keeps every coordinate
/// reduced with a positive denominator, so derived equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub [BigRational; 3]);

impl RationalVector {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        RationalVector([x, y, z])
    }

    /// `(n0/d, n1/d, n2/d)`; panics when `d` is zero.
    pub fn from_fraction(num: [BigInt; 3], den: &BigInt) -> Self {
        RationalVector(num.map(|n| BigRational::new(n, den.clone())))
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.0
    }

    pub fn dot_lattice(&self, v: &LatticeVector) -> BigRational {
        self.0
            .iter()
            .zip(v.0.iter())
            .map(|(a, b)| a * BigRational::from_integer(b.clone()))
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector([&self.0[0] - &other.0[0], &self.0[1] - &other.0[1], &self.0[2] - &other.0[2]])
    }

    /// The lattice point with these coordinates, if all are integral.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        if self.0.iter().all(|c| c.is_integer()) {
            Some(LatticeVector(self.0.clone().map(|c| c.to_integer())))
        } else {
            None
        }
    }
}

impl From<&LatticeVector> for RationalVector {
    fn from(v: &LatticeVector) -> Self {
        v.to_rational()
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// The closed region `{x : <normal, x> >= bound}` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    normal: LatticeVector,
    bound: BigRational,
}

impl HalfSpace {
    pub fn new(normal: LatticeVector, bound: BigRational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        let (_, content) = gcd_reduce(&normal)?;
        if !content.is_one() {
            return Err(Error::NonPrimitiveNormal(normal.to_string()));
        }
        Ok(HalfSpace { normal, bound })
    }

    pub fn with_integer_bound(normal: LatticeVector, bound: BigInt) -> Result<Self> {
        HalfSpace::new(normal, BigRational::from_integer(bound))
    }

    pub fn normal(&self) -> &LatticeVector {
        &self.normal
    }

    pub fn bound(&self) -> &BigRational {
        &self.bound
    }

    /// `<normal, p> - bound`; nonnegative exactly on the region.
    pub fn slack(&self, p: &RationalVector) -> BigRational {
        p.dot_lattice(&self.normal) - &self.bound
    }

    pub fn contains(&self, p: &RationalVector) -> bool {
        !self.slack(p).is_negative()
    }

    pub fn contains_lattice(&self, p: &LatticeVector) -> bool {
        BigRational::from_integer(self.normal.dot(p)) >= self.bound
    }

    pub fn is_tight(&self, p: &RationalVector) -> bool {
        self.slack(p).is_zero()
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> >= {}", self.normal, self.bound)
    }
}

/// Gcd of a list of integers (nonnegative; zero for an all-zero list).
pub fn content(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Splits `v` into its primitive part and positive content.
pub fn gcd_reduce(v: &LatticeVector) -> Result<(LatticeVector, BigInt)> {
    let g = content(&v.0);
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok((LatticeVector(v.0.clone().map(|c| c / &g)), g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: [i64; 3]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn gcd_reduce_examples() {
        assert_eq!(gcd_reduce(&lv([2, 4, 6])).unwrap(), (lv([1, 2, 3]), BigInt::from(2)));
        assert_eq!(gcd_reduce(&lv([0, 0, 5])).unwrap(), (lv([0, 0, 1]), BigInt::from(5)));
        assert_eq!(gcd_reduce(&lv([-3, 0, 0])).unwrap(), (lv([-1, 0, 0]), BigInt::from(3)));
    }

    #[test]
    fn gcd_reduce_zero_is_an_error() {
        let err = gcd_reduce(&lv([0, 0, 0])).unwrap_err();
        assert_eq!(err.to_string(), "zero vector has no primitive part");
    }

    #[test]
    fn halfspace_rejects_bad_normals() {
        assert_eq!(HalfSpace::with_integer_bound(lv([0, 0, 0]), BigInt::zero()), Err(Error::ZeroNormal));
        assert!(matches!(
            HalfSpace::with_integer_bound(lv([2, 0, 0]), BigInt::zero()),
            Err(Error::NonPrimitiveNormal(_))
        ));
    }

    #[test]
    fn rational_vectors_compare_structurally() {
        let a = RationalVector::from_fraction([2.into(), 4.into(), 6.into()], &BigInt::from(4));
        let b = RationalVector::from_fraction([(-1).into(), (-2).into(), (-3).into()], &BigInt::from(-2));
        assert_eq!(a, b);
        assert_eq!(a.0[0].denom(), &BigInt::from(2));
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let a = lv([1, 4, 0]);
        let b = lv([1, 0, 4]);
        let c = a.cross(&b);
        assert!(c.dot(&a).is_zero() && c.dot(&b).is_zero());
        assert_eq!(c, lv([16, -4, -4]));
    }
}
