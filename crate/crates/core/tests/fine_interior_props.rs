//! Fine interior against direct enumeration of the defining inequalities.

mod common;

use common::*;
use fwps_picard::fine_interior::{
    complete_bound, facet_shrink, fine_interior, fine_interior_checked, vertices_of_hrep, DimCertificate,
};
use fwps_picard::lattice::{HalfSpace, RationalVector};
use fwps_picard::polytope::Simplex3;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn half_grid_point(num: [i128; 3], den: i128) -> RationalVector {
    let c = num.map(|x| BigRational::new(BigInt::from(x), BigInt::from(den)));
    RationalVector::new(c[0].clone(), c[1].clone(), c[2].clone())
}

fn inside(hs: &[HalfSpace], p: &RationalVector) -> bool {
    hs.iter().all(|h| h.contains(p))
}

fn with_interior(max: i64) -> impl Strategy<Value = [P; 4]> {
    prop::array::uniform4(prop::array::uniform3(0..=max))
        .prop_filter("degenerate", is_non_degenerate)
        .prop_filter("no interior point", |v| l_star(v) > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Membership on the half-integer grid agrees with checking every
    /// normal of max-norm at most `bound`.
    #[test]
    fn region_matches_inequality_enumeration(v in with_interior(5), bound in 1i64..=2) {
        let s = simplex(v);
        let f = fine_interior(&s, bound as u64);
        let lo: Vec<i64> = (0..3).map(|i| v.iter().map(|p| p[i]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..3).map(|i| v.iter().map(|p| p[i]).max().unwrap()).collect();
        for x in 2 * lo[0]..=2 * hi[0] {
            for y in 2 * lo[1]..=2 * hi[1] {
                for z in 2 * lo[2]..=2 * hi[2] {
                    let num = [x as i128, y as i128, z as i128];
                    let expected = in_fine_region(&v, bound, num, 2);
                    prop_assert_eq!(inside(&f.halfspaces, &half_grid_point(num, 2)), expected, "point {:?}/2", num);
                }
            }
        }
    }

    #[test]
    fn sandwich_holds(v in with_interior(6)) {
        let s = simplex(v);
        let f = fine_interior_checked(&s, fwps_picard::fine_interior::default_bound(&s));
        prop_assert!(f.sandwich_holds);
        let shrink = facet_shrink(&s);
        for p in interior_points(&v) {
            prop_assert!(inside(&f.halfspaces, &RationalVector::from(&to_vec(p))));
        }
        for q in &f.vertices {
            prop_assert!(inside(&shrink, q));
        }
        if f.stable == Some(false) {
            prop_assert!(!f.certified);
        }
        prop_assert!(f.dim_low <= f.dim_high);
    }

    /// Past the complete bound no normal of larger norm cuts the region.
    #[test]
    fn complete_bound_is_exact(v in with_interior(6)) {
        let s = simplex(v);
        let b = complete_bound(&s).unwrap();
        let f = fine_interior_checked(&s, b);
        prop_assert_eq!(f.stable, Some(true));
        prop_assert_eq!(&fine_interior(&s, b + 3).vertices, &f.vertices);
        for q in &f.vertices {
            let den = q.0.iter().fold(BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
            let num = q.0.clone().map(|c| i128::try_from(c.numer() * (&den / c.denom())).unwrap());
            prop_assert!(in_fine_region(&v, b as i64 + 3, num, i128::try_from(&den).unwrap()));
        }
    }

    /// More normals can only shrink the region.
    #[test]
    fn larger_bounds_shrink(v in with_interior(5), bound in 1u64..=3) {
        let s = simplex(v);
        let small = fine_interior(&s, bound);
        let large = fine_interior(&s, bound + 1);
        for q in &large.vertices {
            prop_assert!(inside(&small.halfspaces, q));
        }
    }
}

#[test]
fn dilated_unit_equals_facet_shrink() {
    for d in 5..=8 {
        let s = Simplex3::dilated_unit(d).unwrap();
        let mut shrink = vertices_of_hrep(&facet_shrink(&s)).unwrap();
        shrink.sort();
        for bound in 1..=3 {
            let f = fine_interior(&s, bound);
            let mut got = f.vertices.clone();
            got.sort();
            assert_eq!(got, shrink, "d = {d}, bound = {bound}");
        }
        assert!(fine_interior_checked(&s, 3).certified);
        assert_eq!(
            fwps_picard::fine_interior::dim_certificate(&fine_interior_checked(&s, 3)),
            DimCertificate::Certified { dim: 3 }
        );
    }
}

#[test]
fn quartic_collapses_to_a_point() {
    let s = simplex(unit(4));
    let f = fine_interior_checked(&s, 3);
    assert_eq!(f.vertices, vec![RationalVector::from(&to_vec([1, 1, 1]))]);
    assert!(f.certified);
}
