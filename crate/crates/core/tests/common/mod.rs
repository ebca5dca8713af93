//! Brute-force oracles and generators shared by the integration tests.
//!
//! Everything here works on plain `i64`/`i128` data with orientation
//! predicates and minors, and shares no code with the library's lattice
//! frames, normal forms or Fine-interior construction.

#![allow(dead_code)]

use fwps_picard::lattice::LatticeVector;
use fwps_picard::polytope::{GeneralSimplex, Simplex3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type P = [i64; 3];

pub const FIXTURE: [P; 4] = [[0, 0, 0], [2, 0, 0], [1, 4, 0], [1, 0, 4]];

pub fn unit(k: i64) -> [P; 4] {
    [[0, 0, 0], [k, 0, 0], [0, k, 0], [0, 0, k]]
}

pub fn sub(a: P, b: P) -> [i128; 3] {
    [(a[0] - b[0]) as i128, (a[1] - b[1]) as i128, (a[2] - b[2]) as i128]
}

pub fn cross(a: [i128; 3], b: [i128; 3]) -> [i128; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn dot(a: [i128; 3], b: [i128; 3]) -> i128 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn orient(a: P, b: P, c: P, d: P) -> i128 {
    dot(sub(b, a), cross(sub(c, a), sub(d, a)))
}

/// Whether `p` lies in the relative interior of `conv(v)`, for 1 to 4
/// affinely independent vertices.
pub fn in_relative_interior(v: &[P], p: P) -> bool {
    match v.len() {
        1 => p == v[0],
        2 => {
            let d = sub(v[1], v[0]);
            let w = sub(p, v[0]);
            cross(d, w) == [0, 0, 0] && dot(w, d) > 0 && dot(w, d) < dot(d, d)
        }
        3 => {
            let n = cross(sub(v[1], v[0]), sub(v[2], v[0]));
            if dot(n, sub(p, v[0])) != 0 {
                return false;
            }
            (0..3).all(|i| {
                let (a, b) = (v[i], v[(i + 1) % 3]);
                dot(cross(sub(b, a), sub(p, a)), n) > 0
            })
        }
        4 => (0..4).all(|i| {
            let f: Vec<P> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
            let s_opp = orient(f[0], f[1], f[2], v[i]).signum();
            orient(f[0], f[1], f[2], p).signum() == s_opp
        }),
        _ => panic!("at most four vertices"),
    }
}

/// Closed containment in `conv(v)` for a full-dimensional simplex.
pub fn in_closed_tetrahedron(v: &[P; 4], p: P) -> bool {
    (0..4).all(|i| {
        let f: Vec<P> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
        let s_opp = orient(f[0], f[1], f[2], v[i]).signum();
        let s = orient(f[0], f[1], f[2], p).signum();
        s == 0 || s == s_opp
    })
}

pub fn bounding_box(v: &[P]) -> impl Iterator<Item = P> {
    let lo: Vec<i64> = (0..3).map(|i| v.iter().map(|p| p[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..3).map(|i| v.iter().map(|p| p[i]).max().unwrap()).collect();
    (lo[0]..=hi[0]).flat_map(move |x| {
        let (lo, hi) = (lo.clone(), hi.clone());
        (lo[1]..=hi[1]).flat_map(move |y| (lo[2]..=hi[2]).map(move |z| [x, y, z]))
    })
}

/// Interior lattice points by scanning the bounding box.
pub fn l_star(v: &[P]) -> i64 {
    bounding_box(v).filter(|&p| in_relative_interior(v, p)).count() as i64
}

pub fn interior_points(v: &[P]) -> Vec<P> {
    let mut pts: Vec<P> = bounding_box(v).filter(|&p| in_relative_interior(v, p)).collect();
    pts.sort();
    pts
}

pub fn lattice_points(v: &[P; 4]) -> Vec<P> {
    bounding_box(v).filter(|&p| in_closed_tetrahedron(v, p)).collect()
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `min over vertices of <nu, v>`.
pub fn ord(v: &[P], nu: [i64; 3]) -> i128 {
    v.iter().map(|p| dot(sub(*p, [0, 0, 0]), [nu[0] as i128, nu[1] as i128, nu[2] as i128])).min().unwrap()
}

/// Primitive inward facet normals; normal `i` belongs to the facet opposite
/// vertex `i`.
pub fn facet_normals(v: &[P; 4]) -> Vec<[i64; 3]> {
    (0..4)
        .map(|i| {
            let f: Vec<P> = (0..4).filter(|&j| j != i).map(|j| v[j]).collect();
            let n = cross(sub(f[1], f[0]), sub(f[2], f[0]));
            let g = gcd(gcd(n[0], n[1]), n[2]);
            let s = if dot(n, sub(v[i], f[0])) > 0 { 1 } else { -1 };
            n.map(|x| (s * x / g) as i64)
        })
        .collect()
}

/// Membership of the rational point `num / den` in the region cut out by
/// the facet normals and every nonzero normal of max-norm at most `bound`.
pub fn in_fine_region(v: &[P; 4], bound: i64, num: [i128; 3], den: i128) -> bool {
    for nu in facet_normals(v) {
        if dot(nu.map(|x| x as i128), num) < (ord(v, nu) + 1) * den {
            return false;
        }
    }
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                if a == 0 && b == 0 && c == 0 {
                    continue;
                }
                let nu = [a as i128, b as i128, c as i128];
                if dot(nu, num) < (ord(v, [a, b, c]) + 1) * den {
                    return false;
                }
            }
        }
    }
    true
}

/// Determinant of a square `i128` matrix by cofactor expansion.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Elementary divisors from determinantal divisors: `d_k / d_{k-1}`, where
/// `d_k` is the gcd of all `k x k` minors. Zero divisors are omitted.
pub fn elementary_divisors(m: &[Vec<i128>]) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut dets = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        dets.push(g);
    }
    dets.windows(2).map(|w| w[1] / w[0]).collect()
}

pub fn to_vec(p: P) -> LatticeVector {
    LatticeVector::from_i64(p)
}

pub fn simplex(v: [P; 4]) -> Simplex3 {
    Simplex3::from_i64(v).expect("non-degenerate")
}

pub fn vertices_i64(s: &GeneralSimplex) -> Vec<P> {
    s.vertices().iter().map(|v| v.to_i64().expect("small coordinates")).collect()
}

pub fn simplex_vertices(s: &Simplex3) -> [P; 4] {
    s.vertices().clone().map(|v| v.to_i64().expect("small coordinates"))
}

pub fn is_non_degenerate(v: &[P; 4]) -> bool {
    orient(v[0], v[1], v[2], v[3]) != 0
}

pub fn has_non_primitive_edge(v: &[P; 4]) -> bool {
    (0..4).any(|i| {
        (i + 1..4).any(|j| {
            let d = sub(v[j], v[i]);
            gcd(gcd(d[0], d[1]), d[2]) > 1
        })
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Simplices with coordinates in `[0, max]`, non-degenerate and with at
/// least one non-primitive edge.
pub fn random_corpus(seed: u64, count: usize, max: i64) -> Vec<[P; 4]> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: [P; 4] = std::array::from_fn(|_| std::array::from_fn(|_| r.gen_range(0..=max)));
        if is_non_degenerate(&v) && has_non_primitive_edge(&v) {
            out.push(v);
        }
    }
    out
}

/// A random unimodular matrix as a product of elementary operations.
pub fn random_unimodular(r: &mut impl Rng, steps: usize) -> [[i64; 3]; 3] {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..steps {
        let i = r.gen_range(0..3);
        let mut j = r.gen_range(0..2);
        if j >= i {
            j += 1;
        }
        match r.gen_range(0..3) {
            0 => {
                let k = r.gen_range(-2..=2);
                for c in 0..3 {
                    m[i][c] += k * m[j][c];
                }
            }
            1 => m.swap(i, j),
            _ => {
                for c in 0..3 {
                    m[i][c] = -m[i][c];
                }
            }
        }
    }
    m
}

pub fn apply(m: &[[i64; 3]; 3], shift: P, p: P) -> P {
    std::array::from_fn(|i| (0..3).map(|j| m[i][j] * p[j]).sum::<i64>() + shift[i])
}

pub fn transform(v: &[P; 4], m: &[[i64; 3]; 3], shift: P) -> [P; 4] {
    v.map(|p| apply(m, shift, p))
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
