//! Lattice simplices, their faces and relative-interior point counts.
//!
//! Every simplex carries a local frame: the affine lattice spanned by its
//! vertices together with integer barycentric functionals. Enumeration and
//! the `l*` count run in that frame, so a triangle or segment sitting in
//! `Z^3` is counted against its own lattice rather than the ambient one.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    affine_lattice_n, gcd_reduce, lll_reduce, row_echelon, AffineLattice, HalfSpace, IntegerMatrix, LatticeVector,
    RationalVector,
};

/// A full-dimensional lattice simplex in `Z^3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex3 {
    vertices: [LatticeVector; 4],
}

impl Simplex3 {
    pub fn new(vertices: [LatticeVector; 4]) -> Result<Self> {
        let s = Simplex3 { vertices };
        if s.signed_volume().is_zero() {
            return Err(Error::DegenerateSimplex(format!("vertices of {s} are affinely dependent")));
        }
        Ok(s)
    }

    pub fn from_i64(v: [[i64; 3]; 4]) -> Result<Self> {
        Simplex3::new(v.map(LatticeVector::from_i64))
    }

    /// `k * conv{0, e1, e2, e3}`.
    pub fn dilated_unit(k: i64) -> Result<Self> {
        Simplex3::from_i64([[0, 0, 0], [k, 0, 0], [0, k, 0], [0, 0, k]])
    }

    pub fn vertices(&self) -> &[LatticeVector; 4] {
        &self.vertices
    }

    fn signed_volume(&self) -> BigInt {
        let [a, b, c, d] = &self.vertices;
        let (u, v, w) = (b - a, c - a, d - a);
        u.dot(&v.cross(&w))
    }

    /// `3!` times the Euclidean volume.
    pub fn normalized_volume(&self) -> BigInt {
        self.signed_volume().abs()
    }

    /// Primitive inward facet inequalities; entry `i` is the facet opposite
    /// vertex `i`.
    pub fn facet_halfspaces(&self) -> Result<[HalfSpace; 4]> {
        let mut out = Vec::with_capacity(4);
        for i in 0..4 {
            let others: Vec<&LatticeVector> = (0..4).filter(|&j| j != i).map(|j| &self.vertices[j]).collect();
            let raw = (others[1] - others[0]).cross(&(others[2] - others[0]));
            let (mut normal, _) =
                gcd_reduce(&raw).map_err(|_| Error::DegenerateSimplex(format!("facet {i} of {self} is degenerate")))?;
            let mut bound = normal.dot(others[0]);
            if normal.dot(&self.vertices[i]) < bound {
                normal = -&normal;
                bound = -bound;
            }
            out.push(HalfSpace::with_integer_bound(normal, bound)?);
        }
        Ok(out.try_into().expect("four facets"))
    }

    pub fn ord(&self, nu: &LatticeVector) -> Result<BigInt> {
        ord(&self.vertices, nu)
    }

    pub fn to_general(&self) -> GeneralSimplex {
        GeneralSimplex::new(self.vertices.to_vec()).expect("a valid Simplex3 is a valid 3-simplex")
    }

    pub fn face(&self, indices: &[usize]) -> Result<Face> {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() || idx.len() != indices.len() || idx.iter().any(|&i| i > 3) {
            return Err(Error::InvalidFace(indices.to_vec()));
        }
        let simplex = GeneralSimplex::new(idx.iter().map(|&i| self.vertices[i].clone()).collect())?;
        Ok(Face { indices: idx, simplex })
    }

    /// The six edges, in lexicographic order of vertex index pairs.
    pub fn edges(&self) -> Vec<Face> {
        EDGE_PAIRS.iter().map(|&(i, j)| self.face(&[i, j]).expect("edges of a simplex")).collect()
    }

    /// All fifteen nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Face> {
        (1u32..16)
            .map(|mask| {
                let idx: Vec<usize> = (0..4).filter(|&i| mask & (1 << i) != 0).collect();
                self.face(&idx).expect("subsets of simplex vertices are faces")
            })
            .collect()
    }

    pub fn l_star(&self) -> BigInt {
        self.to_general().l_star()
    }

    pub fn interior_points(&self) -> Vec<LatticeVector> {
        self.to_general().interior_points()
    }

    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        self.to_general().lattice_points()
    }
}

impl fmt::Display for Simplex3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_conv(f, &self.vertices)
    }
}

fn write_conv(f: &mut fmt::Formatter<'_>, vertices: &[LatticeVector]) -> fmt::Result {
    f.write_str("conv{")?;
    for (i, v) in vertices.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str("}")
}

pub const EDGE_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A face of a [`Simplex3`], identified by its sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub indices: Vec<usize>,
    pub simplex: GeneralSimplex,
}

impl Face {
    pub fn dim(&self) -> usize {
        self.indices.len() - 1
    }

    pub fn l_star(&self) -> BigInt {
        self.simplex.l_star()
    }

    /// For an edge, the index pair.
    pub fn edge_pair(&self) -> Option<(usize, usize)> {
        (self.indices.len() == 2).then(|| (self.indices[0], self.indices[1]))
    }
}

/// Minimum of `<nu, v>` over the given vertices.
pub fn ord(vertices: &[LatticeVector], nu: &LatticeVector) -> Result<BigInt> {
    if nu.is_zero() {
        return Err(Error::ZeroNormal);
    }
    Ok(vertices.iter().map(|v| nu.dot(v)).min().expect("simplices have vertices"))
}

/// Integer affine functional `<coeffs, x> + constant` on local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Functional {
    coeffs: Vec<BigInt>,
    constant: BigInt,
}

impl Functional {
    fn eval(&self, x: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, b)| acc + a * b)
    }
}

/// A lattice simplex of dimension `d <= 3` in `Z^3`, with its own lattice frame.
#[derive(Clone, Debug)]
pub struct GeneralSimplex {
    vertices: Vec<LatticeVector>,
    lattice: AffineLattice,
    local: Vec<Vec<BigInt>>,
    /// `mu_k >= 0` cuts out the simplex; `sum mu_k = volume`.
    barycentric: Vec<Functional>,
    volume: BigInt,
}

impl PartialEq for GeneralSimplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for GeneralSimplex {}

impl GeneralSimplex {
    pub fn new(vertices: Vec<LatticeVector>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() > 4 {
            return Err(Error::DegenerateSimplex(format!("{} vertices", vertices.len())));
        }
        let d = vertices.len() - 1;
        let pts: Vec<Vec<BigInt>> = vertices.iter().map(|v| v.0.to_vec()).collect();
        let lattice = affine_lattice_n(&pts);
        if lattice.rank() != d {
            return Err(Error::DegenerateSimplex(format!(
                "{} points spanning dimension {}",
                vertices.len(),
                lattice.rank()
            )));
        }
        let local: Vec<Vec<BigInt>> =
            pts.iter().map(|p| lattice.coordinates(p).expect("vertices lie on their own lattice")).collect();

        // Edge matrix with columns w_j - w_0, and its adjugate.
        let mut t = IntegerMatrix::zeros(d, d);
        for j in 0..d {
            for i in 0..d {
                t[(i, j)] = &local[j + 1][i] - &local[0][i];
            }
        }
        let det = t.determinant();
        let adj = adjugate(&t);
        let sign = if det.is_negative() { -BigInt::one() } else { BigInt::one() };
        let volume = det.abs();

        let mut barycentric = Vec::with_capacity(d + 1);
        let mut others = Vec::with_capacity(d);
        for j in 0..d {
            let coeffs: Vec<BigInt> = (0..d).map(|k| &sign * &adj[(j, k)]).collect();
            let constant = -coeffs.iter().zip(&local[0]).fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
            others.push(Functional { coeffs, constant });
        }
        let mut first = Functional { coeffs: vec![BigInt::zero(); d], constant: volume.clone() };
        for f in &others {
            for (c, a) in first.coeffs.iter_mut().zip(&f.coeffs) {
                *c -= a;
            }
            first.constant -= &f.constant;
        }
        barycentric.push(first);
        barycentric.extend(others);

        Ok(GeneralSimplex { vertices, lattice, local, barycentric, volume })
    }

    pub fn from_i64(v: &[[i64; 3]]) -> Result<Self> {
        GeneralSimplex::new(v.iter().copied().map(LatticeVector::from_i64).collect())
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    pub fn ord(&self, nu: &LatticeVector) -> Result<BigInt> {
        ord(&self.vertices, nu)
    }

    /// Normalized volume measured in the simplex's own lattice (`d!` times
    /// the lattice-relative volume). Points have volume 1.
    pub fn normalized_volume(&self) -> BigInt {
        if self.dim() == 0 {
            BigInt::one()
        } else {
            self.volume.clone()
        }
    }

    /// Lattice points of the closed simplex, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        self.collect_points(false)
    }

    /// Lattice points of the relative interior, in lexicographic order.
    pub fn interior_points(&self) -> Vec<LatticeVector> {
        self.collect_points(true)
    }

    /// Number of lattice points in the relative interior.
    pub fn l_star(&self) -> BigInt {
        if self.dim() == 0 {
            return BigInt::one();
        }
        let mut count = BigInt::zero();
        self.scan(true, |_, lo, hi| count += hi - lo + 1);
        count
    }

    fn collect_points(&self, strict: bool) -> Vec<LatticeVector> {
        if self.dim() == 0 {
            return self.vertices.clone();
        }
        let mut out = Vec::new();
        self.scan(strict, |prefix, lo, hi| {
            let mut t = lo.clone();
            while &t <= hi {
                let mut x = prefix.to_vec();
                x.push(t.clone());
                let p = self.lattice.point(&x);
                out.push(LatticeVector([p[0].clone(), p[1].clone(), p[2].clone()]));
                t += 1;
            }
        });
        out.sort();
        out
    }

    /// Walks the bounding box of the local coordinates except the last, and
    /// reports each nonempty interval of the last coordinate.
    fn scan(&self, strict: bool, mut visit: impl FnMut(&[BigInt], &BigInt, &BigInt)) {
        let d = self.dim();
        let threshold = if strict { BigInt::one() } else { BigInt::zero() };
        let lo: Vec<BigInt> = (0..d).map(|i| self.local.iter().map(|p| &p[i]).min().unwrap().clone()).collect();
        let hi: Vec<BigInt> = (0..d).map(|i| self.local.iter().map(|p| &p[i]).max().unwrap().clone()).collect();
        let mut prefix: Vec<BigInt> = lo[..d - 1].to_vec();
        loop {
            if let Some((a, b)) = self.last_interval(&prefix, &threshold, &lo[d - 1], &hi[d - 1]) {
                visit(&prefix, &a, &b);
            }
            // Odometer over the prefix box.
            let mut k = d - 1;
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                prefix[k] += 1;
                if prefix[k] <= hi[k] {
                    break;
                }
                prefix[k] = lo[k].clone();
            }
        }
    }

    fn last_interval(
        &self,
        prefix: &[BigInt],
        threshold: &BigInt,
        lo: &BigInt,
        hi: &BigInt,
    ) -> Option<(BigInt, BigInt)> {
        let d = self.dim();
        let mut a = lo.clone();
        let mut b = hi.clone();
        for f in &self.barycentric {
            let rest = f.coeffs[..d - 1].iter().zip(prefix).fold(f.constant.clone(), |acc, (c, x)| acc + c * x);
            let slope = &f.coeffs[d - 1];
            // slope * t + rest >= threshold
            let need = threshold - &rest;
            if slope.is_zero() {
                if need.is_positive() {
                    return None;
                }
            } else if slope.is_positive() {
                a = a.max(need.div_ceil(slope));
            } else {
                b = b.min((-need).div_floor(&-slope));
            }
            if a > b {
                return None;
            }
        }
        Some((a, b))
    }

    /// Integer barycentric weights of a lattice point, scaled by the
    /// normalized volume; `None` when the point is off the affine lattice.
    pub fn scaled_barycentric(&self, p: &LatticeVector) -> Option<Vec<BigInt>> {
        let x = self.lattice.coordinates(&p.0)?;
        Some(self.barycentric.iter().map(|f| f.eval(&x)).collect())
    }

    pub fn contains(&self, p: &LatticeVector) -> bool {
        self.scaled_barycentric(p).is_some_and(|mu| mu.iter().all(|m| !m.is_negative()))
    }

    pub fn relative_interior_contains(&self, p: &LatticeVector) -> bool {
        if self.dim() == 0 {
            return &self.vertices[0] == p;
        }
        self.scaled_barycentric(p).is_some_and(|mu| mu.iter().all(|m| m.is_positive()))
    }

    /// Exact barycentric coordinates of `p`, or `None` when `p` is outside
    /// the affine hull.
    pub fn barycentric(&self, p: &RationalVector) -> Option<Vec<BigRational>> {
        barycentric(&self.vertices, p)
    }
}

impl fmt::Display for GeneralSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_conv(f, &self.vertices)
    }
}

fn adjugate(t: &IntegerMatrix) -> IntegerMatrix {
    let d = t.rows();
    let mut adj = IntegerMatrix::zeros(d, d);
    if d == 1 {
        adj[(0, 0)] = BigInt::one();
        return adj;
    }
    for i in 0..d {
        for j in 0..d {
            // adj[j][i] = (-1)^(i+j) * minor(i, j)
            let rows: Vec<Vec<BigInt>> = (0..d)
                .filter(|&r| r != i)
                .map(|r| (0..d).filter(|&c| c != j).map(|c| t[(r, c)].clone()).collect())
                .collect();
            let minor = IntegerMatrix::from_rows(&rows, d - 1).determinant();
            adj[(j, i)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    adj
}

/// Solves `sum lambda_i v_i = p`, `sum lambda_i = 1` exactly.
pub fn barycentric(vertices: &[LatticeVector], p: &RationalVector) -> Option<Vec<BigRational>> {
    let n = vertices.len();
    // Augmented 4 x (n + 1) system.
    let mut rows: Vec<Vec<BigRational>> = (0..3)
        .map(|i| {
            let mut r: Vec<BigRational> = vertices.iter().map(|v| BigRational::from_integer(v.0[i].clone())).collect();
            r.push(p.0[i].clone());
            r
        })
        .collect();
    let mut ones = vec![BigRational::one(); n];
    ones.push(BigRational::one());
    rows.push(ones);

    let mut pivot_row = 0;
    for col in 0..n {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return None;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let src = rows[pivot_row].clone();
                for (x, s) in rows[r].iter_mut().zip(src) {
                    *x -= &f * s;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[n..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(rows[..n].iter().map(|r| r[n].clone()).collect())
}

/// Affine dimension of a finite point set; `-1` for the empty set.
pub fn affine_dimension(points: &[RationalVector]) -> i32 {
    let Some(first) = points.first() else { return -1 };
    let mut rows: Vec<Vec<BigRational>> = points[1..].iter().map(|p| p.sub(first).0.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, r);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot[col];
            for (x, s) in row.iter_mut().zip(&pivot) {
                *x -= &f * s;
            }
        }
        rank += 1;
    }
    rank as i32
}

pub fn lattice_affine_dimension(points: &[LatticeVector]) -> i32 {
    let pts: Vec<RationalVector> = points.iter().map(LatticeVector::to_rational).collect();
    affine_dimension(&pts)
}

/// `Δ` moved into a canonical lattice frame: over all vertex orderings the
/// edge matrix with the least Hermite normal form is chosen, and its rows are
/// then LLL-reduced. Affine unimodular images of `Δ` share the same frame
/// simplex, and its coordinates are short.
#[derive(Clone, Debug)]
pub struct ReducedFrame {
    pub simplex: Simplex3,
    /// Frame vertex `k` is the image of original vertex `order[k]`.
    pub order: [usize; 4],
    origin: LatticeVector,
    /// `x' = forward * (x - origin)`.
    forward: IntegerMatrix,
    backward: IntegerMatrix,
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                out.push([a, b, c, 6 - a - b - c]);
            }
        }
    }
    out
}

fn mat_vec(m: &IntegerMatrix, v: &LatticeVector) -> LatticeVector {
    LatticeVector(std::array::from_fn(|i| (0..3).map(|j| &m[(i, j)] * &v.0[j]).sum()))
}

impl ReducedFrame {
    pub fn of(s: &Simplex3) -> Self {
        let v = &s.vertices;
        let mut best: Option<(Vec<BigInt>, [usize; 4], crate::lattice::RowEchelon)> = None;
        for order in permutations4() {
            let rows: Vec<Vec<BigInt>> =
                (0..3).map(|r| (1..4).map(|c| &v[order[c]].0[r] - &v[order[0]].0[r]).collect()).collect();
            let ech = row_echelon(&IntegerMatrix::from_rows(&rows, 3));
            let key: Vec<BigInt> = ech.form.row_vecs().concat();
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, order, ech));
            }
        }
        let (_, order, ech) = best.expect("24 orderings");
        let (reduced, t) = lll_reduce(&ech.form);
        let forward = t.mul(&ech.transform);
        let inv = row_echelon(&forward);
        debug_assert_eq!(inv.form, IntegerMatrix::identity(3));
        let vertices: [LatticeVector; 4] = std::array::from_fn(|k| {
            if k == 0 {
                LatticeVector::zero()
            } else {
                LatticeVector(std::array::from_fn(|r| reduced[(r, k - 1)].clone()))
            }
        });
        ReducedFrame {
            simplex: Simplex3::new(vertices).expect("unimodular image of a simplex"),
            order,
            origin: v[order[0]].clone(),
            forward,
            backward: inv.transform,
        }
    }

    pub fn to_frame(&self, p: &LatticeVector) -> LatticeVector {
        mat_vec(&self.forward, &(p - &self.origin))
    }

    pub fn point_from_frame(&self, p: &RationalVector) -> RationalVector {
        let c = &p.0;
        RationalVector(std::array::from_fn(|i| {
            (0..3).map(|j| BigRational::from_integer(self.backward[(i, j)].clone()) * &c[j]).sum::<BigRational>()
                + BigRational::from_integer(self.origin.0[i].clone())
        }))
    }

    pub fn halfspace_from_frame(&self, h: &HalfSpace) -> HalfSpace {
        let n = &h.normal().0;
        let normal = LatticeVector(std::array::from_fn(|j| (0..3).map(|i| &self.forward[(i, j)] * &n[i]).sum()));
        let bound = h.bound() + BigRational::from_integer(normal.dot(&self.origin));
        HalfSpace::new(normal, bound).expect("unimodular maps keep normals primitive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: [i64; 3]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn fixture() -> Simplex3 {
        Simplex3::from_i64([[0, 0, 0], [2, 0, 0], [1, 4, 0], [1, 0, 4]]).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn degenerate_simplex_rejected() {
        let err = Simplex3::from_i64([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap_err();
        assert!(matches!(err, Error::DegenerateSimplex(_)));
        assert!(GeneralSimplex::from_i64(&[[0, 0, 0], [1, 1, 1], [2, 2, 2]]).is_err());
    }

    #[test]
    fn facets_of_unit_tetrahedron() {
        let s = Simplex3::dilated_unit(1).unwrap();
        let h = s.facet_halfspaces().unwrap();
        assert_eq!(h[0].normal(), &lv([-1, -1, -1]));
        assert_eq!(h[0].bound(), &q(-1, 1));
        assert_eq!(h[1].normal(), &lv([1, 0, 0]));
        assert_eq!(h[2].normal(), &lv([0, 1, 0]));
        assert_eq!(h[3].normal(), &lv([0, 0, 1]));
        for hs in &h[1..] {
            assert!(hs.bound().is_zero());
        }
    }

    #[test]
    fn facets_of_fixture() {
        let s = fixture();
        let h = s.facet_halfspaces().unwrap();
        assert!(h.iter().any(|x| x.normal() == &lv([4, -1, -1]) && x.bound().is_zero()));
        for (i, hs) in h.iter().enumerate() {
            for (j, v) in s.vertices().iter().enumerate() {
                let slack = hs.slack(&v.to_rational());
                if i == j {
                    assert!(slack.is_positive());
                } else {
                    assert!(slack.is_zero());
                }
            }
        }
    }

    #[test]
    fn ord_examples() {
        let s = Simplex3::dilated_unit(5).unwrap();
        assert_eq!(s.ord(&lv([1, 0, 0])).unwrap(), 0.into());
        assert_eq!(s.ord(&lv([-1, -1, -1])).unwrap(), (-5).into());
        assert_eq!(fixture().ord(&lv([-1, 0, 0])).unwrap(), (-2).into());
        assert_eq!(s.ord(&lv([0, 0, 0])), Err(Error::ZeroNormal));
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(Simplex3::dilated_unit(1).unwrap().lattice_points().len(), 4);
        assert_eq!(GeneralSimplex::from_i64(&[[0, 0, 0], [5, 0, 0]]).unwrap().lattice_points().len(), 6);
        assert_eq!(Simplex3::dilated_unit(4).unwrap().lattice_points().len(), 35);
    }

    #[test]
    fn l_star_examples() {
        assert_eq!(GeneralSimplex::from_i64(&[[0, 0, 0], [5, 0, 0]]).unwrap().l_star(), 4.into());
        let s4 = Simplex3::dilated_unit(4).unwrap();
        assert_eq!(s4.l_star(), 1.into());
        assert_eq!(s4.interior_points(), vec![lv([1, 1, 1])]);
        let s5 = Simplex3::dilated_unit(5).unwrap();
        assert_eq!(s5.interior_points(), vec![lv([1, 1, 1]), lv([1, 1, 2]), lv([1, 2, 1]), lv([2, 1, 1])]);
        let tri = GeneralSimplex::from_i64(&[[1, 0, 0], [1, 4, 0], [1, 0, 4]]).unwrap();
        assert_eq!(tri.l_star(), 3.into());
        assert_eq!(tri.interior_points(), vec![lv([1, 1, 1]), lv([1, 1, 2]), lv([1, 2, 1])]);
    }

    #[test]
    fn skew_triangle_counts_in_its_own_lattice() {
        // Plane y = 3z; the ambient box contains many points off the plane.
        let tri = GeneralSimplex::from_i64(&[[0, 0, 0], [2, 0, 0], [1, 3, 1]]).unwrap();
        assert_eq!(tri.normalized_volume(), 2.into());
        assert_eq!(tri.l_star(), 0.into());
        assert_eq!(tri.lattice_points().len(), 4);
    }

    #[test]
    fn barycentric_examples() {
        let unit = Simplex3::dilated_unit(1).unwrap().to_general();
        let center = RationalVector::new(q(1, 4), q(1, 4), q(1, 4));
        assert_eq!(unit.barycentric(&center).unwrap(), vec![q(1, 4); 4]);
        let v = unit.barycentric(&lv([0, 1, 0]).to_rational()).unwrap();
        assert_eq!(v, vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)]);
        let s4 = Simplex3::dilated_unit(4).unwrap().to_general();
        assert_eq!(s4.barycentric(&lv([1, 1, 1]).to_rational()).unwrap(), vec![q(1, 4); 4]);
        let seg = GeneralSimplex::from_i64(&[[0, 0, 0], [2, 0, 0]]).unwrap();
        assert!(seg.barycentric(&lv([1, 1, 0]).to_rational()).is_none());
        assert_eq!(seg.barycentric(&lv([3, 0, 0]).to_rational()).unwrap(), vec![q(-1, 2), q(3, 2)]);
    }

    #[test]
    fn volumes() {
        assert_eq!(Simplex3::dilated_unit(1).unwrap().normalized_volume(), 1.into());
        assert_eq!(Simplex3::dilated_unit(5).unwrap().normalized_volume(), 125.into());
        assert_eq!(fixture().normalized_volume(), 32.into());
    }

    #[test]
    fn edges_and_faces() {
        let s = fixture();
        let edges = s.edges();
        assert_eq!(edges.len(), 6);
        assert_eq!(edges[0].edge_pair(), Some((0, 1)));
        assert_eq!(edges[0].l_star(), 1.into());
        assert_eq!(edges[5].l_star(), 3.into());
        assert_eq!(s.faces().len(), 15);
        assert!(s.face(&[0, 0]).is_err());
        assert!(s.face(&[4]).is_err());
    }

    #[test]
    fn affine_dimension_of_sets() {
        assert_eq!(affine_dimension(&[]), -1);
        assert_eq!(lattice_affine_dimension(&[lv([1, 1, 1])]), 0);
        assert_eq!(lattice_affine_dimension(&[lv([1, 1, 1]), lv([2, 2, 2]), lv([3, 3, 3])]), 1);
        assert_eq!(lattice_affine_dimension(&fixture().interior_points()), 2);
        assert_eq!(lattice_affine_dimension(&Simplex3::dilated_unit(5).unwrap().interior_points()), 3);
    }

    #[test]
    fn reduced_frame_is_shared_by_images() {
        let s = Simplex3::from_i64([[3, 0, 3], [2, 5, 2], [2, 0, 0], [0, 2, 4]]).unwrap();
        // (x, y, z) -> (x + 2y - z, y + 3z, z) + (1, -2, 5), with the vertices relabelled.
        let map = |p: [i64; 3]| [p[0] + 2 * p[1] - p[2] + 1, p[1] + 3 * p[2] - 2, p[2] + 5];
        let v = s.vertices().clone().map(|x| x.to_i64().unwrap());
        let t = Simplex3::from_i64([map(v[2]), map(v[0]), map(v[3]), map(v[1])]).unwrap();
        let (a, b) = (ReducedFrame::of(&s), ReducedFrame::of(&t));
        assert_eq!(a.simplex, b.simplex);
        assert_eq!(a.simplex.normalized_volume(), s.normalized_volume());

        for (k, &i) in a.order.iter().enumerate() {
            assert_eq!(a.to_frame(&s.vertices()[i]), a.simplex.vertices()[k]);
            assert_eq!(a.point_from_frame(&a.simplex.vertices()[k].to_rational()), s.vertices()[i].to_rational());
        }
        let mut back: Vec<HalfSpace> =
            a.simplex.facet_halfspaces().unwrap().iter().map(|h| a.halfspace_from_frame(h)).collect();
        let mut orig = s.facet_halfspaces().unwrap().to_vec();
        back.sort();
        orig.sort();
        assert_eq!(back, orig);
    }

    #[test]
    fn reduced_frame_shortens_coordinates() {
        let skew = Simplex3::from_i64([[0, 0, 0], [1, 17, -23], [0, 1, 31], [0, 0, 1]]).unwrap();
        let frame = ReducedFrame::of(&skew);
        let reach = frame.simplex.vertices().iter().map(LatticeVector::max_norm).max().unwrap();
        assert_eq!(reach, BigInt::one());
    }
}
