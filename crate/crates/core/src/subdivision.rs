//! Subdivision of a 3-simplex along an edge `e` into pieces `Δ_1, …` that
//! share the cut triangles `Δ_i ∩ Δ_{i+1}`, plus the checks that make such a
//! subdivision usable: covering, admissibility and the interior-point
//! identity `l*(Δ) = Σ l*(Δ_i) + Σ l*(Δ_i ∩ Δ_{i+1})`.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harness::serde_bigint;
use crate::lattice::{gcd_reduce, LatticeVector};
use crate::polytope::{Face, GeneralSimplex, Simplex3};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSubdivision {
    pub parent: Simplex3,
    pub edge: Face,
    pub opposite_edge: Face,
    /// Oriented endpoints of the cut edge, as vertex indices of the parent.
    pub orientation: (usize, usize),
    pub pieces: Vec<GeneralSimplex>,
    pub cuts: Vec<GeneralSimplex>,
}

/// Lattice points strictly inside the segment `from -> to`, ordered from `from`.
pub fn segment_interior_points(from: &LatticeVector, to: &LatticeVector) -> Vec<LatticeVector> {
    let d = to - from;
    let Ok((step, g)) = gcd_reduce(&d) else { return Vec::new() };
    let mut out = Vec::new();
    let mut k = BigInt::from(1);
    while k < g {
        out.push(from + &step.scale(&k));
        k += 1;
    }
    out
}

/// Interior lattice points of an edge of `s`, ordered from its first vertex.
pub fn edge_interior_points(s: &Simplex3, e: &Face) -> Result<Vec<LatticeVector>> {
    let (i, j) = e.edge_pair().ok_or_else(|| Error::InvalidFace(e.indices.clone()))?;
    Ok(segment_interior_points(&s.vertices()[i], &s.vertices()[j]))
}

fn opposite_pair(i: usize, j: usize) -> (usize, usize) {
    let rest: Vec<usize> = (0..4).filter(|&k| k != i && k != j).collect();
    (rest[0], rest[1])
}

/// Maximal subdivision along `e`: cut at every interior lattice point of
/// `e` through the opposite edge.
pub fn subdivide_along_edge(s: &Simplex3, e: &Face) -> Result<EdgeSubdivision> {
    let (i, j) = e.edge_pair().ok_or_else(|| Error::InvalidFace(e.indices.clone()))?;
    subdivide_along_oriented_edge(s, i, j)
}

/// As [`subdivide_along_edge`], with pieces ordered from vertex `from` to
/// vertex `to`.
pub fn subdivide_along_oriented_edge(s: &Simplex3, from: usize, to: usize) -> Result<EdgeSubdivision> {
    if from == to || from > 3 || to > 3 {
        return Err(Error::InvalidFace(vec![from, to]));
    }
    let v = s.vertices();
    let points = segment_interior_points(&v[from], &v[to]);
    if points.is_empty() {
        return Err(Error::EdgeWithoutInteriorPoints);
    }
    let (a, b) = opposite_pair(from, to);
    let (oa, ob) = (&v[a], &v[b]);

    let mut breaks = Vec::with_capacity(points.len() + 2);
    breaks.push(v[from].clone());
    breaks.extend(points.iter().cloned());
    breaks.push(v[to].clone());

    let pieces = breaks
        .windows(2)
        .map(|w| GeneralSimplex::new(vec![w[0].clone(), w[1].clone(), oa.clone(), ob.clone()]))
        .collect::<Result<Vec<_>>>()?;
    let cuts = points
        .iter()
        .map(|p| GeneralSimplex::new(vec![p.clone(), oa.clone(), ob.clone()]))
        .collect::<Result<Vec<_>>>()?;

    Ok(EdgeSubdivision {
        parent: s.clone(),
        edge: s.face(&[from, to])?,
        opposite_edge: s.face(&[a, b])?,
        orientation: (from, to),
        pieces,
        cuts,
    })
}

impl EdgeSubdivision {
    /// Accepts a user-supplied subdivision after checking that the pieces
    /// are 3-simplices inside the parent with pairwise disjoint interiors
    /// and volumes adding up to the parent's, and that every cut is a
    /// triangle shared by two pieces.
    pub fn custom(
        parent: &Simplex3,
        edge: (usize, usize),
        pieces: Vec<GeneralSimplex>,
        cuts: Vec<GeneralSimplex>,
    ) -> Result<Self> {
        let (i, j) = edge;
        if i == j || i > 3 || j > 3 {
            return Err(Error::InvalidFace(vec![i, j]));
        }
        let invalid = |msg: String| Err(Error::InvalidSubdivision(msg));
        let whole = parent.to_general();
        for (k, p) in pieces.iter().enumerate() {
            if p.dim() != 3 {
                return invalid(format!("piece {k} has dimension {}", p.dim()));
            }
            if let Some(v) = p.vertices().iter().find(|v| !whole.contains(v)) {
                return invalid(format!("piece {k} has vertex {v} outside the parent"));
            }
        }
        for (k, c) in cuts.iter().enumerate() {
            if c.dim() != 2 {
                return invalid(format!("cut {k} has dimension {}", c.dim()));
            }
            let holders = pieces.iter().filter(|p| c.vertices().iter().all(|v| p.vertices().contains(v))).count();
            if holders < 2 {
                return invalid(format!("cut {k} is not a face shared by two pieces"));
            }
        }
        let total: BigInt = pieces.iter().map(GeneralSimplex::normalized_volume).sum();
        if total != parent.normalized_volume() {
            return invalid(format!("piece volumes sum to {total}, parent volume is {}", parent.normalized_volume()));
        }
        for a in 0..pieces.len() {
            for b in a + 1..pieces.len() {
                if !interiors_disjoint(&pieces[a], &pieces[b]) {
                    return invalid(format!("pieces {a} and {b} overlap"));
                }
            }
        }
        let (oa, ob) = opposite_pair(i, j);
        Ok(EdgeSubdivision {
            parent: parent.clone(),
            edge: parent.face(&[i, j])?,
            opposite_edge: parent.face(&[oa, ob])?,
            orientation: (i, j),
            pieces,
            cuts,
        })
    }

    pub fn edge_pair(&self) -> (usize, usize) {
        self.edge.edge_pair().expect("edge face")
    }

    /// Volume additivity of the pieces.
    pub fn covers_parent(&self) -> bool {
        self.pieces.iter().map(GeneralSimplex::normalized_volume).sum::<BigInt>() == self.parent.normalized_volume()
    }
}

/// Separating-axis test for two full-dimensional simplices.
fn interiors_disjoint(a: &GeneralSimplex, b: &GeneralSimplex) -> bool {
    let edges = |s: &GeneralSimplex| -> Vec<LatticeVector> {
        let v = s.vertices();
        let mut out = Vec::new();
        for x in 0..v.len() {
            for y in x + 1..v.len() {
                out.push(&v[y] - &v[x]);
            }
        }
        out
    };
    let (ea, eb) = (edges(a), edges(b));
    let mut axes = Vec::new();
    for set in [&ea, &eb] {
        for x in 0..set.len() {
            for y in x + 1..set.len() {
                axes.push(set[x].cross(&set[y]));
            }
        }
    }
    for x in &ea {
        for y in &eb {
            axes.push(x.cross(y));
        }
    }
    axes.iter().filter(|d| !d.is_zero()).any(|d| {
        let range = |s: &GeneralSimplex| {
            let vals: Vec<BigInt> = s.vertices().iter().map(|v| d.dot(v)).collect();
            (vals.iter().min().unwrap().clone(), vals.iter().max().unwrap().clone())
        };
        let (amin, amax) = range(a);
        let (bmin, bmax) = range(b);
        amax <= bmin || bmax <= amin
    })
}

/// Both sides of the interior-point identity for a subdivision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    #[serde(with = "serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "serde_bigint::vec")]
    pub piece_lstars: Vec<BigInt>,
    #[serde(with = "serde_bigint::vec")]
    pub cut_lstars: Vec<BigInt>,
    #[serde(with = "serde_bigint")]
    pub pieces_sum: BigInt,
    #[serde(with = "serde_bigint")]
    pub cuts_sum: BigInt,
    pub holds: bool,
}

pub fn identity_check(sub: &EdgeSubdivision) -> IdentityCheck {
    let lhs = sub.parent.l_star();
    let piece_lstars: Vec<BigInt> = sub.pieces.iter().map(GeneralSimplex::l_star).collect();
    let cut_lstars: Vec<BigInt> = sub.cuts.iter().map(GeneralSimplex::l_star).collect();
    let pieces_sum: BigInt = piece_lstars.iter().sum();
    let cuts_sum: BigInt = cut_lstars.iter().sum();
    let holds = lhs == &pieces_sum + &cuts_sum;
    IdentityCheck { lhs, piece_lstars, cut_lstars, pieces_sum, cuts_sum, holds }
}

/// An interior lattice point of the parent lying on an edge of the subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityViolation {
    pub point: LatticeVector,
    pub edge: [LatticeVector; 2],
}

fn on_closed_segment(p: &LatticeVector, a: &LatticeVector, b: &LatticeVector) -> bool {
    let ab = b - a;
    let ap = p - a;
    if !ab.cross(&ap).is_zero() {
        return false;
    }
    let t = ap.dot(&ab);
    !t.is_negative() && t <= ab.dot(&ab)
}

/// Checks that no interior lattice point of the parent lies on an edge of
/// a piece. Edges inside a facet of the parent are skipped.
pub fn validate_admissibility(sub: &EdgeSubdivision) -> std::result::Result<(), Vec<AdmissibilityViolation>> {
    let interior = sub.parent.interior_points();
    if interior.is_empty() {
        return Ok(());
    }
    let facets = sub.parent.facet_halfspaces().expect("valid parent");
    let in_facet = |a: &LatticeVector, b: &LatticeVector| {
        facets.iter().any(|h| h.is_tight(&a.to_rational()) && h.is_tight(&b.to_rational()))
    };
    let mut seen: Vec<[LatticeVector; 2]> = Vec::new();
    let mut violations = Vec::new();
    for piece in &sub.pieces {
        let v = piece.vertices();
        for x in 0..v.len() {
            for y in x + 1..v.len() {
                let mut edge = [v[x].clone(), v[y].clone()];
                edge.sort();
                if seen.contains(&edge) {
                    continue;
                }
                seen.push(edge.clone());
                if in_facet(&edge[0], &edge[1]) {
                    continue;
                }
                for p in &interior {
                    if on_closed_segment(p, &edge[0], &edge[1]) {
                        violations.push(AdmissibilityViolation { point: p.clone(), edge: edge.clone() });
                    }
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn lv(c: [i64; 3]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn fixture() -> Simplex3 {
        Simplex3::from_i64([[0, 0, 0], [2, 0, 0], [1, 4, 0], [1, 0, 4]]).unwrap()
    }

    #[test]
    fn edge_points() {
        assert_eq!(segment_interior_points(&lv([0, 0, 0]), &lv([2, 0, 0])), vec![lv([1, 0, 0])]);
        assert_eq!(
            segment_interior_points(&lv([0, 0, 0]), &lv([5, 0, 0])),
            vec![lv([1, 0, 0]), lv([2, 0, 0]), lv([3, 0, 0]), lv([4, 0, 0])]
        );
        assert!(segment_interior_points(&lv([0, 0, 0]), &lv([1, 1, 1])).is_empty());
        let s = fixture();
        assert_eq!(edge_interior_points(&s, &s.edges()[0]).unwrap(), vec![lv([1, 0, 0])]);
    }

    #[test]
    fn quintic_subdivision() {
        let s = Simplex3::dilated_unit(5).unwrap();
        let sub = subdivide_along_edge(&s, &s.edges()[0]).unwrap();
        assert_eq!(sub.pieces.len(), 5);
        assert_eq!(sub.cuts.len(), 4);
        for (i, c) in sub.cuts.iter().enumerate() {
            assert_eq!(c.vertices(), &[lv([i as i64 + 1, 0, 0]), lv([0, 5, 0]), lv([0, 0, 5])]);
        }
        assert!(sub.covers_parent());
        let id = identity_check(&sub);
        assert_eq!(id.lhs, 4.into());
        assert_eq!(id.piece_lstars, ints(&[0, 1, 2, 1, 0]));
        assert_eq!(id.cut_lstars, ints(&[0, 0, 0, 0]));
        assert!(id.holds);
        assert_eq!(validate_admissibility(&sub), Ok(()));
    }

    #[test]
    fn fixture_subdivision() {
        let s = fixture();
        let sub = subdivide_along_edge(&s, &s.edges()[0]).unwrap();
        assert_eq!(sub.pieces.len(), 2);
        assert_eq!(sub.cuts[0].vertices(), &[lv([1, 0, 0]), lv([1, 4, 0]), lv([1, 0, 4])]);
        assert!(sub.covers_parent());
        let id = identity_check(&sub);
        assert_eq!((id.lhs.clone(), id.pieces_sum.clone(), id.cuts_sum.clone()), (3.into(), 0.into(), 3.into()));
        assert!(id.holds);
        assert_eq!(validate_admissibility(&sub), Ok(()));
    }

    #[test]
    fn primitive_edge_is_rejected() {
        let s = fixture();
        assert_eq!(subdivide_along_edge(&s, &s.edges()[1]), Err(Error::EdgeWithoutInteriorPoints));
    }

    #[test]
    fn empty_parent_is_vacuously_admissible() {
        let s = Simplex3::from_i64([[0, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let sub = subdivide_along_edge(&s, &s.edges()[0]).unwrap();
        assert_eq!(validate_admissibility(&sub), Ok(()));
        let id = identity_check(&sub);
        assert!(id.holds && id.lhs.is_zero());
    }

    #[test]
    fn reversed_orientation_reverses_pieces() {
        let s = Simplex3::dilated_unit(5).unwrap();
        let fwd = subdivide_along_oriented_edge(&s, 0, 1).unwrap();
        let back = subdivide_along_oriented_edge(&s, 1, 0).unwrap();
        let mut f = identity_check(&fwd).piece_lstars;
        f.reverse();
        assert_eq!(f, identity_check(&back).piece_lstars);
    }

    #[test]
    fn cone_over_interior_point_is_not_admissible() {
        let s = Simplex3::dilated_unit(5).unwrap();
        let apex = lv([1, 1, 1]);
        let v = s.vertices();
        let pieces: Vec<GeneralSimplex> = (0..4)
            .map(|skip| {
                let mut pts = vec![apex.clone()];
                pts.extend((0..4).filter(|&k| k != skip).map(|k| v[k].clone()));
                GeneralSimplex::new(pts).unwrap()
            })
            .collect();
        let cuts: Vec<GeneralSimplex> = crate::polytope::EDGE_PAIRS
            .iter()
            .map(|&(a, b)| GeneralSimplex::new(vec![apex.clone(), v[a].clone(), v[b].clone()]).unwrap())
            .collect();
        let sub = EdgeSubdivision::custom(&s, (0, 1), pieces, cuts).unwrap();
        let violations = validate_admissibility(&sub).unwrap_err();
        assert!(violations.iter().all(|x| x.point == apex));
        assert_eq!(violations.len(), 4);
        assert!(!identity_check(&sub).holds);
    }

    #[test]
    fn custom_subdivision_validation() {
        let s = fixture();
        let maximal = subdivide_along_edge(&s, &s.edges()[0]).unwrap();
        let ok = EdgeSubdivision::custom(&s, (0, 1), maximal.pieces.clone(), maximal.cuts.clone()).unwrap();
        assert_eq!(identity_check(&ok), identity_check(&maximal));

        let one_piece = vec![maximal.pieces[0].clone()];
        assert!(matches!(EdgeSubdivision::custom(&s, (0, 1), one_piece, vec![]), Err(Error::InvalidSubdivision(_))));
        let twice = vec![maximal.pieces[0].clone(), maximal.pieces[0].clone()];
        assert!(EdgeSubdivision::custom(&s, (0, 1), twice, vec![]).is_err());
        let stray_cut = vec![GeneralSimplex::from_i64(&[[0, 0, 0], [1, 0, 0], [1, 1, 0]]).unwrap()];
        assert!(EdgeSubdivision::custom(&s, (0, 1), maximal.pieces.clone(), stray_cut).is_err());
    }
}
