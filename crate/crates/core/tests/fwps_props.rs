//! Weight systems: ray relations, multiplicities and the round trip through
//! `simplex_from_weights`.

mod common;

use common::*;
use fwps_picard::fwps::{is_well_formed, normal_fan_rays, simplex_from_weights, weights_from_simplex};
use fwps_picard::harness::search::{weight_candidates, DegreeMode};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn sorted(mut q: Vec<BigInt>) -> Vec<BigInt> {
    q.sort();
    q
}

/// Anticanonical weight systems up to `q_max` by filtering all ordered
/// 4-tuples.
fn anticanonical_oracle(q_max: u64) -> Vec<([u64; 4], u64)> {
    let mut out = Vec::new();
    for a in 1..=q_max {
        for b in 1..=q_max {
            for c in 1..=q_max {
                for e in 1..=q_max {
                    let q = [a, b, c, e];
                    let d = a + b + c + e;
                    if q.windows(2).all(|w| w[0] <= w[1])
                        && a.gcd(&b).gcd(&c).gcd(&e) == 1
                        && q.iter().all(|w| d % w == 0)
                    {
                        out.push((q, d));
                    }
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weights_annihilate_the_rays(v in prop::array::uniform4(prop::array::uniform3(-5i64..=5)).prop_filter("degenerate", is_non_degenerate)) {
        let s = simplex(v);
        let w = weights_from_simplex(&s);
        let normals = facet_normals(&v);
        let rays: Vec<[i64; 3]> = normal_fan_rays(&s).iter().map(|r| r.to_i64().unwrap()).collect();
        prop_assert_eq!(&rays, &normals);
        let q: Vec<i128> = w.weights.iter().map(|x| i128::try_from(x).unwrap()).collect();
        for c in 0..3 {
            prop_assert_eq!((0..4).map(|i| q[i] * normals[i][c] as i128).sum::<i128>(), 0);
        }
        prop_assert!(q.iter().all(|&x| x > 0));
        prop_assert_eq!(q.iter().fold(0, |g, &x| gcd(g, x)), 1);

        let m: Vec<Vec<i128>> = normals.iter().map(|n| n.iter().map(|&x| x as i128).collect()).collect();
        let index: i128 = elementary_divisors(&m).iter().product();
        prop_assert_eq!(w.multiplicity, BigInt::from(index));
    }

    #[test]
    fn weights_follow_vertex_permutations(v in prop::array::uniform4(prop::array::uniform3(-4i64..=4)).prop_filter("degenerate", is_non_degenerate)) {
        let w = weights_from_simplex(&simplex(v));
        let p = weights_from_simplex(&simplex([v[2], v[0], v[3], v[1]]));
        prop_assert_eq!(&p.weights, &vec![w.weights[2].clone(), w.weights[0].clone(), w.weights[3].clone(), w.weights[1].clone()]);
        prop_assert_eq!(p.multiplicity, w.multiplicity);
    }
}

#[test]
fn anticanonical_round_trip() {
    for (q, d) in weight_candidates(30, DegreeMode::Anticanonical) {
        let s = simplex_from_weights(&q, d).unwrap();
        let w = weights_from_simplex(&s);
        let qb: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
        if is_well_formed(&qb) {
            assert_eq!(sorted(w.weights.clone()), qb, "weights {q:?}");
            assert_eq!(w.multiplicity, BigInt::from(1), "weights {q:?}");
        }
        assert_eq!(s.l_star(), BigInt::from(1), "weights {q:?}");
    }
}

#[test]
fn divisor_degrees_round_trip() {
    for (q, d) in weight_candidates(6, DegreeMode::DivisorsUpTo(24)) {
        let qb: Vec<BigInt> = q.iter().map(|&x| BigInt::from(x)).collect();
        if !is_well_formed(&qb) {
            continue;
        }
        let w = weights_from_simplex(&simplex_from_weights(&q, d).unwrap());
        assert_eq!(sorted(w.weights), qb, "weights {q:?}, degree {d}");
        assert_eq!(w.multiplicity, BigInt::from(1));
    }
}

#[test]
fn enumeration_matches_generate_and_filter() {
    for q_max in [1, 4, 12, 30] {
        let got = weight_candidates(q_max, DegreeMode::Anticanonical);
        let expected = anticanonical_oracle(q_max);
        assert_eq!(got, expected, "q_max = {q_max}");
        let mut dedup = got.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), got.len());
    }
    assert_eq!(weight_candidates(1, DegreeMode::Anticanonical), vec![([1, 1, 1, 1], 4)]);
}
