//! The Fine interior `F(Δ)`: the intersection, over all primitive integer
//! functionals `ν`, of `{x : <ν, x> >= ord_Δ(ν) + 1}`.
//!
//! Only normals up to a max-norm bound are used, so the computed region is
//! an outer approximation; normals that cannot cut the facet shrink are
//! skipped, and past [`complete_bound`] the region is exact. Its dimension
//! is certified by a sandwich: the convex hull of the interior lattice
//! points lies inside `F(Δ)`, which lies inside the computed region, so
//! equal dimensions pin the true one.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{content, HalfSpace, LatticeVector, RationalVector};
use crate::polytope::{affine_dimension, lattice_affine_dimension, ReducedFrame, Simplex3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FineInteriorResult {
    pub halfspaces: Vec<HalfSpace>,
    pub vertices: Vec<RationalVector>,
    /// Affine dimension of the interior lattice points (`-1` when none).
    pub dim_low: i32,
    /// Affine dimension of the computed region.
    pub dim_high: i32,
    pub certified: bool,
    pub bound_used: u64,
    /// Whether raising the bound by one left the region unchanged; `None`
    /// when not checked.
    pub stable: Option<bool>,
    /// Both sandwich inclusions verified exactly.
    pub sandwich_holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DimCertificate {
    Certified { dim: i32 },
    Uncertain { low: i32, high: i32 },
}

impl DimCertificate {
    pub fn certified_dim(&self) -> Option<i32> {
        match *self {
            DimCertificate::Certified { dim } => Some(dim),
            DimCertificate::Uncertain { .. } => None,
        }
    }
}

impl fmt::Display for DimCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimCertificate::Certified { dim } => write!(f, "dim {dim} (certified)"),
            DimCertificate::Uncertain { low, high } => write!(f, "dim in [{low}, {high}] (uncertain)"),
        }
    }
}

pub fn dim_certificate(result: &FineInteriorResult) -> DimCertificate {
    if result.certified {
        DimCertificate::Certified { dim: result.dim_low }
    } else {
        DimCertificate::Uncertain { low: result.dim_low, high: result.dim_high }
    }
}

/// Primitive vectors with max-norm exactly `k`, in lexicographic order.
fn normals_of_norm(k: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for x in -k..=k {
        for y in -k..=k {
            for z in -k..=k {
                if x.abs().max(y.abs()).max(z.abs()) != k {
                    continue;
                }
                if content(&[x.into(), y.into(), z.into()]).is_one() {
                    out.push(LatticeVector::new(x, y, z));
                }
            }
        }
    }
    out
}

/// All primitive vectors with max-norm at most `bound`, both signs kept,
/// ordered by max-norm and then lexicographically.
pub fn candidate_normals(bound: u64) -> Vec<LatticeVector> {
    (1..=bound as i64).flat_map(normals_of_norm).collect()
}

/// Measured in the reduced frame: the larger of two plus the largest
/// absolute vertex coordinate once the first interior lattice point is moved
/// to the origin, and [`complete_bound`]. Simplices without interior points
/// get 2.
pub fn default_bound(s: &Simplex3) -> u64 {
    let frame = ReducedFrame::of(s).simplex;
    let heuristic = frame_bound(&frame);
    if heuristic == 2 && frame.interior_points().is_empty() {
        return heuristic;
    }
    heuristic.max(complete_bound(&frame).unwrap_or(0))
}

/// Largest max-norm of a normal supporting the exact `F(Δ)`, so that
/// `F_B = F(Δ)` for every `B` at or above it. `None` when the coordinates
/// do not fit machine integers.
pub fn complete_bound(s: &Simplex3) -> Option<u64> {
    let Some(mut pass) = FineInteriorPass::start(s) else { return Some(1) };
    if !pass.separate(None) {
        return None;
    }
    let facets = s.facet_halfspaces().expect("valid simplex");
    let max = pass
        .halfspaces
        .iter()
        .filter(|h| !facets.iter().any(|f| f.normal() == h.normal()))
        .map(|h| h.normal().max_norm())
        .max();
    Some(max.map_or(1, |m| u64::try_from(&m).expect("norm fits u64")))
}

fn cross3(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn small(x: &BigInt) -> Option<i128> {
    i64::try_from(x).ok().map(i128::from)
}

fn small_vertices(s: &Simplex3) -> Option<[[i128; 3]; 4]> {
    let mut v = [[0i128; 3]; 4];
    for (row, p) in v.iter_mut().zip(s.vertices()) {
        for (c, x) in row.iter_mut().zip(p.coords()) {
            *c = small(x)?;
        }
    }
    Some(v)
}

/// The deepest inequality cutting off `w`, as a primitive normal and its
/// `ord`, among normals of max-norm at most `bound`. Ties go to the smaller
/// max-norm, then lexicographically. `Err` when the numbers outgrow
/// machine integers.
///
/// With `w = W/D`, `ν` cuts off `w` iff `<ν, w> - ord(ν) < 1`, i.e.
/// `<ν, W - D v_j> <= D - 1` for every vertex: a bounded simplex of
/// normals, since `w` lies inside `Δ`.
fn deepest_cut(v: &[[i128; 3]; 4], w: &RationalVector, bound: Option<u64>) -> Result<Option<([i128; 3], i128)>, ()> {
    let den = w.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let d = small(&den).ok_or(())?;
    let mut num = [0i128; 3];
    for (n, c) in num.iter_mut().zip(&w.0) {
        *n = small(&(c.numer() * (&den / c.denom()))).ok_or(())?;
    }
    let u: [[i128; 3]; 4] = std::array::from_fn(|j| std::array::from_fn(|k| num[k] - d * v[j][k]));
    if u.iter().flatten().any(|x| x.abs() > 1 << 40) || d > 1 << 40 {
        return Err(());
    }

    // Bounding box from the vertices of the normal simplex.
    let mut range = [(i128::MAX, i128::MIN); 3];
    for skip in 0..4 {
        let r: Vec<[i128; 3]> = (0..4).filter(|&j| j != skip).map(|j| u[j]).collect();
        let (bc, ca, ab) = (cross3(r[1], r[2]), cross3(r[2], r[0]), cross3(r[0], r[1]));
        let det = dot3(r[0], bc);
        if det == 0 {
            return Err(());
        }
        for (k, range) in range.iter_mut().enumerate() {
            let n = (d - 1) * (bc[k] + ca[k] + ab[k]);
            let (lo, hi) = if det > 0 { (n, n) } else { (-n, -n) };
            let det = det.abs();
            range.0 = range.0.min(Integer::div_floor(&lo, &det));
            range.1 = range.1.max(Integer::div_ceil(&hi, &det));
        }
    }
    if let Some(b) = bound {
        let b = i128::from(b);
        for r in &mut range {
            *r = (r.0.max(-b), r.1.min(b));
        }
    }

    let mut best: Option<(i128, i128, [i128; 3])> = None;
    for x in range[0].0..=range[0].1 {
        for y in range[1].0..=range[1].1 {
            // Each `<ν, u_j> <= D - 1` bounds z linearly.
            let (mut zlo, mut zhi) = range[2];
            for uj in &u {
                let c = d - 1 - x * uj[0] - y * uj[1];
                match uj[2].cmp(&0) {
                    std::cmp::Ordering::Greater => zhi = zhi.min(Integer::div_floor(&c, &uj[2])),
                    std::cmp::Ordering::Less => zlo = zlo.max(Integer::div_ceil(&c, &uj[2])),
                    std::cmp::Ordering::Equal if c < 0 => zhi = zlo - 1,
                    std::cmp::Ordering::Equal => {}
                }
            }
            for z in zlo..=zhi {
                let nu = [x, y, z];
                if nu == [0, 0, 0] || x.gcd(&y).gcd(&z) != 1 {
                    continue;
                }
                let depth = u.iter().map(|uj| dot3(nu, *uj)).max().unwrap();
                let key = (depth, x.abs().max(y.abs()).max(z.abs()), nu);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    Ok(best.map(|(_, _, nu)| (nu, v.iter().map(|p| dot3(nu, *p)).min().unwrap())))
}

fn frame_bound(s: &Simplex3) -> u64 {
    let Some(center) = s.interior_points().into_iter().next() else {
        return 2;
    };
    let reach = s.vertices().iter().map(|v| (v - &center).max_norm()).max().unwrap_or_default();
    2 + u64::try_from(&reach).expect("vertex coordinates fit in u64")
}

/// Facet inequalities of `Δ` shifted one lattice step inward.
pub fn facet_shrink(s: &Simplex3) -> Vec<HalfSpace> {
    s.facet_halfspaces()
        .expect("valid simplex")
        .into_iter()
        .map(|h| HalfSpace::new(h.normal().clone(), h.bound() + BigRational::one()).expect("primitive normal"))
        .collect()
}

fn fine_halfspace(s: &Simplex3, nu: &LatticeVector) -> HalfSpace {
    let ord = s.ord(nu).expect("candidate normals are nonzero");
    HalfSpace::with_integer_bound(nu.clone(), ord + 1).expect("candidate normals are primitive")
}

/// Fine interior with normals up to `bound`, without the stability rerun.
pub fn fine_interior(s: &Simplex3, bound: u64) -> FineInteriorResult {
    FineInteriorPass::run(s, bound, false)
}

/// Fine interior with normals up to `bound`, also checking that normals of
/// norm `bound + 1` do not cut the region further. An unstable region is
/// never reported as certified.
pub fn fine_interior_checked(s: &Simplex3, bound: u64) -> FineInteriorResult {
    FineInteriorPass::run(s, bound, true)
}

/// The checked Fine interior computed in the reduced frame of `s` and mapped
/// back. `bound` limits normals in that frame, so the region, its
/// certificate and the default bound do not depend on the coordinates `s`
/// happens to be given in.
pub fn fine_interior_reduced(s: &Simplex3, bound: u64) -> FineInteriorResult {
    let frame = ReducedFrame::of(s);
    let r = fine_interior_checked(&frame.simplex, bound);
    let mut halfspaces: Vec<HalfSpace> = r.halfspaces.iter().map(|h| frame.halfspace_from_frame(h)).collect();
    halfspaces.sort();
    let mut vertices: Vec<RationalVector> = r.vertices.iter().map(|v| frame.point_from_frame(v)).collect();
    vertices.sort();
    FineInteriorResult { halfspaces, vertices, ..r }
}

/// Region vertices cached as integer numerators over a common denominator.
struct VertexCache {
    nums: Vec<[BigInt; 3]>,
    dens: Vec<BigInt>,
}

impl VertexCache {
    fn new(vertices: &[RationalVector]) -> Self {
        let mut nums = Vec::with_capacity(vertices.len());
        let mut dens = Vec::with_capacity(vertices.len());
        for v in vertices {
            let den = v.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            nums.push(v.0.clone().map(|c| c.numer() * (&den / c.denom())));
            dens.push(den);
        }
        VertexCache { nums, dens }
    }

    /// Whether some vertex violates `<nu, x> >= rhs`.
    fn violated(&self, nu: &LatticeVector, rhs: &BigInt) -> bool {
        self.nums.iter().zip(&self.dens).any(|(n, d)| {
            let lhs = &nu.0[0] * &n[0] + &nu.0[1] * &n[1] + &nu.0[2] * &n[2];
            lhs < rhs * d
        })
    }
}

struct FineInteriorPass<'a> {
    simplex: &'a Simplex3,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<RationalVector>,
    cache: VertexCache,
}

impl<'a> FineInteriorPass<'a> {
    fn run(s: &'a Simplex3, bound: u64, check_next: bool) -> FineInteriorResult {
        let interior = s.interior_points();
        if interior.is_empty() {
            return FineInteriorResult {
                halfspaces: Vec::new(),
                vertices: Vec::new(),
                dim_low: -1,
                dim_high: -1,
                certified: true,
                bound_used: bound,
                stable: None,
                sandwich_holds: true,
            };
        }

        let mut pass = FineInteriorPass::start(s).expect("simplex with interior points");
        if !pass.separate(Some(bound)) {
            for k in 1..=bound as i64 {
                pass.cut_with(&normals_of_norm(k));
            }
        }
        let mut stable = None;
        if check_next {
            let before = pass.vertices.clone();
            let mut probe = FineInteriorPass {
                simplex: s,
                halfspaces: pass.halfspaces.clone(),
                vertices: pass.vertices.clone(),
                cache: VertexCache::new(&pass.vertices),
            };
            probe.cut_with(&normals_of_norm(bound as i64 + 1));
            stable = Some(probe.vertices == before);
        }

        let halfspaces = prune_redundant(pass.halfspaces, &pass.vertices);
        let vertices = pass.vertices;
        let dim_low = lattice_affine_dimension(&interior);
        let dim_high = affine_dimension(&vertices);
        let sandwich_holds = check_sandwich(s, &halfspaces, &vertices, &interior);
        let certified = sandwich_holds && dim_low == dim_high && stable != Some(false);
        FineInteriorResult {
            halfspaces,
            vertices,
            dim_low,
            dim_high,
            certified,
            bound_used: bound,
            stable,
            sandwich_holds,
        }
    }

    /// The facet shrink, or `None` when `s` has no interior lattice points.
    fn start(s: &'a Simplex3) -> Option<Self> {
        if s.l_star().is_zero() {
            return None;
        }
        let halfspaces = facet_shrink(s);
        let vertices = vertices_of_hrep(&halfspaces).expect("facet normals of a simplex bound a region");
        let cache = VertexCache::new(&vertices);
        Some(FineInteriorPass { simplex: s, halfspaces, vertices, cache })
    }

    fn cut_with(&mut self, normals: &[LatticeVector]) {
        for nu in normals {
            if self.vertices.is_empty() {
                return;
            }
            let ord = self.simplex.ord(nu).expect("nonzero normal");
            if self.cache.violated(nu, &(ord + 1)) {
                self.add(fine_halfspace(self.simplex, nu));
            }
        }
    }

    /// Adds deepest cuts until no normal of max-norm at most `bound` cuts
    /// off a vertex, which makes the region exact. `false` when the numbers
    /// outgrow machine integers; the cuts made so far stay valid.
    fn separate(&mut self, bound: Option<u64>) -> bool {
        let Some(v) = small_vertices(self.simplex) else { return false };
        let mut inside = BTreeSet::new();
        'scan: loop {
            for w in &self.vertices {
                if inside.contains(w) {
                    continue;
                }
                match deepest_cut(&v, w, bound) {
                    Err(()) => return false,
                    Ok(None) => {
                        inside.insert(w.clone());
                    }
                    Ok(Some((nu, ord))) => {
                        let nu = LatticeVector::new(nu[0], nu[1], nu[2]);
                        self.add(HalfSpace::with_integer_bound(nu, BigInt::from(ord + 1)).expect("primitive normal"));
                        continue 'scan;
                    }
                }
            }
            return true;
        }
    }

    fn halfspaces_with(&self, h: &HalfSpace) -> Vec<HalfSpace> {
        let mut all = self.halfspaces.clone();
        all.push(h.clone());
        all
    }

    /// Cuts the region by `h`: kept vertices plus those on the new plane.
    fn add(&mut self, h: HalfSpace) {
        let mut vertices = triple_vertices(&self.halfspaces_with(&h), Some(self.halfspaces.len()));
        vertices.extend(self.vertices.iter().filter(|v| h.contains(v)).cloned());
        self.halfspaces.push(h);
        self.vertices = vertices.into_iter().collect();
        if !self.vertices.is_empty() {
            let verts = &self.vertices;
            self.halfspaces.retain(|h| verts.iter().any(|v| h.is_tight(v)));
        }
        self.cache = VertexCache::new(&self.vertices);
    }
}

/// Drops inequalities whose removal leaves the vertex set unchanged.
/// A full-dimensional region keeps exactly its facet inequalities.
fn prune_redundant(mut halfspaces: Vec<HalfSpace>, vertices: &[RationalVector]) -> Vec<HalfSpace> {
    halfspaces.sort();
    if affine_dimension(vertices) == 3 {
        halfspaces.retain(|h| {
            let tight: Vec<RationalVector> = vertices.iter().filter(|v| h.is_tight(v)).cloned().collect();
            affine_dimension(&tight) == 2
        });
        return halfspaces;
    }
    let mut i = halfspaces.len();
    while i > 0 {
        i -= 1;
        let mut trial = halfspaces.clone();
        trial.remove(i);
        if matches!(vertices_of_hrep(&trial), Ok(v) if v == vertices) {
            halfspaces = trial;
        }
    }
    halfspaces
}

/// `conv(interior points) ⊆ region ⊆ facet shrink`, checked on generators.
pub fn check_sandwich(
    s: &Simplex3,
    halfspaces: &[HalfSpace],
    vertices: &[RationalVector],
    interior: &[LatticeVector],
) -> bool {
    let inner = interior.iter().all(|p| halfspaces.iter().all(|h| h.contains_lattice(p)));
    let shrink = facet_shrink(s);
    let outer = vertices.iter().all(|v| shrink.iter().all(|h| h.contains(v)));
    inner && outer
}

/// Whether `{x : <n_i, x> >= b_i}` is bounded, i.e. no nonzero direction
/// `d` has `<n_i, d> >= 0` for every normal.
fn normals_positively_span(normals: &[&LatticeVector]) -> bool {
    // A nonzero recession cone either contains a line (normals of rank < 3)
    // or has an extreme ray on the intersection of two constraint planes.
    let mut full_rank = false;
    let mut directions = Vec::new();
    for (i, a) in normals.iter().enumerate() {
        for b in &normals[i + 1..] {
            let c = a.cross(b);
            if c.is_zero() {
                continue;
            }
            if !full_rank && normals.iter().any(|n| !n.dot(&c).is_zero()) {
                full_rank = true;
            }
            directions.push(c);
        }
    }
    if !full_rank {
        return false;
    }
    !directions.iter().any(|c| {
        let neg = -c;
        normals.iter().all(|n| !n.dot(c).is_negative()) || normals.iter().all(|n| !n.dot(&neg).is_negative())
    })
}

/// All vertices of a bounded intersection of half-spaces, sorted.
pub fn vertices_of_hrep(halfspaces: &[HalfSpace]) -> Result<Vec<RationalVector>> {
    let normals: Vec<&LatticeVector> = halfspaces.iter().map(HalfSpace::normal).collect();
    if !normals_positively_span(&normals) {
        return Err(Error::UnboundedRegion);
    }
    Ok(triple_vertices(halfspaces, None).into_iter().collect())
}

/// Feasible intersection points of three boundary planes, restricted to
/// triples containing `pinned` when given.
fn triple_vertices(halfspaces: &[HalfSpace], pinned: Option<usize>) -> BTreeSet<RationalVector> {
    // Scale each inequality to integer form <n', x> >= c with n' = den * n.
    let rows: Vec<([BigInt; 3], BigInt)> = halfspaces
        .iter()
        .map(|h| {
            let den = h.bound().denom().clone();
            (h.normal().0.clone().map(|c| c * &den), h.bound().numer().clone())
        })
        .collect();

    let mut found = BTreeSet::new();
    let m = rows.len();
    for i in 0..m {
        for j in i + 1..m {
            if pinned.is_some_and(|p| p != i && p != j && p < j) {
                continue;
            }
            let ij = cross(&rows[i].0, &rows[j].0);
            if ij.iter().all(Zero::is_zero) {
                continue;
            }
            for k in j + 1..m {
                if pinned.is_some_and(|p| p != i && p != j && p != k) {
                    continue;
                }
                let det = dot(&ij, &rows[k].0);
                if det.is_zero() {
                    continue;
                }
                // Cramer via cross products: x = (b_i (n_j x n_k) + b_j (n_k x n_i) + b_k (n_i x n_j)) / det.
                let jk = cross(&rows[j].0, &rows[k].0);
                let ki = cross(&rows[k].0, &rows[i].0);
                let num: [BigInt; 3] =
                    std::array::from_fn(|t| &rows[i].1 * &jk[t] + &rows[j].1 * &ki[t] + &rows[k].1 * &ij[t]);
                if rows.iter().all(|(n, c)| {
                    let lhs = dot(n, &num);
                    if det.is_positive() {
                        lhs >= c * &det
                    } else {
                        lhs <= c * &det
                    }
                }) {
                    found.insert(RationalVector::from_fraction(num, &det));
                }
            }
        }
    }
    found
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn dot(a: &[BigInt; 3], b: &[BigInt; 3]) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}
