mod common;

use std::collections::BTreeSet;

use kapollo::curvlab::{
    conjecture_modulus, denominator_norm, packing_census, primitivity, project, residue_census, saturation_check,
    table_membership, CurvlabError,
};
use kapollo::groups::SUPPORTED;
use kapollo::packing::{fundamental_packing, PackingKind};
use kapollo::qint::{Disc, KNum, KPoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

fn d(x: i64) -> Disc {
    Disc::new(x).unwrap()
}

fn set(v: &[u64]) -> BTreeSet<u64> {
    v.iter().copied().collect()
}

/// Curvatures ≤ bound of the classical packing with root quadruple
/// (−1, 2, 2, 3), by Descartes reflections a ↦ 2(b + c + d) − a.
fn classical_curvatures(bound: i64) -> Vec<i64> {
    let mut out = vec![-1, 2, 2, 3];
    let mut stack = vec![([-1i64, 2, 2, 3], usize::MAX)];
    while let Some((q, last)) = stack.pop() {
        for i in 0..4 {
            if i == last {
                continue;
            }
            let s: i64 = q.iter().sum::<i64>() - q[i];
            let new = 2 * s - q[i];
            // reflecting a non-maximal entry shrinks the quadruple
            if new <= q[i] || new > bound {
                continue;
            }
            let mut r = q;
            r[i] = new;
            out.push(new);
            stack.push((r, i));
        }
    }
    out
}

fn fundamental_discs(lo: i64) -> Vec<i64> {
    let squarefree = |n: i64| (2..).take_while(|p| p * p <= n).all(|p| n % (p * p) != 0);
    (lo..-4)
        .chain([-4])
        .filter(|&d| {
            let n = -d;
            (d.rem_euclid(4) == 1 && squarefree(n))
                || (d.rem_euclid(4) == 0 && squarefree(n / 4) && matches!((n / 4) % 4, 1 | 2))
        })
        .collect()
}

#[test]
fn gaussian_bounded_residues_match_classical_packing() {
    let bound = 400;
    let r = packing_census(d(-4), PackingKind::Bounded, 24, bound, false).unwrap();
    let classical: BTreeSet<u64> = classical_curvatures(bound as i64).iter().map(|n| n.rem_euclid(24) as u64).collect();
    assert_eq!(r.observed, classical);
    assert_eq!(r.observed, set(&[2, 3, 6, 11, 14, 15, 18, 23]));
}

#[test]
fn gaussian_strip_residues_match_soddy_recursion() {
    let bound = 200;
    let r = packing_census(d(-4), PackingKind::Strip, 24, bound, false).unwrap();
    let oracle: BTreeSet<u64> =
        common::soddy_strip(bound as i64).curvatures.keys().map(|n| n.rem_euclid(24) as u64).collect();
    assert_eq!(r.observed, oracle);
    assert_eq!(r.observed, set(&[0, 1, 4, 9, 12, 16]));
}

#[test]
fn golden_residue_sets() {
    let s = |disc, kind, m| packing_census(d(disc), kind, m, 300, false).unwrap().observed;
    assert_eq!(s(-8, PackingKind::Bounded, 4), set(&[0, 2, 3]));
    assert_eq!(s(-8, PackingKind::Strip, 4), set(&[0, 1, 2]));
    assert_eq!(s(-7, PackingKind::Bounded, 3), set(&[0, 2]));
    assert_eq!(s(-19, PackingKind::Strip, 3), set(&[0, 1]));
    assert_eq!(s(-20, PackingKind::Bounded, 4), set(&[2, 3]));
}

#[test]
fn conjecture_modulus_divides_24() {
    assert_eq!(conjecture_modulus(&d(-4)).m, 24);
    assert_eq!(conjecture_modulus(&d(-8)).m, 4);
    assert_eq!(conjecture_modulus(&d(-19)).m, 3);
    for disc in fundamental_discs(-2000) {
        let m = conjecture_modulus(&d(disc));
        assert_eq!(24 % m.m, 0, "Δ = {disc}");
        assert_eq!(m.m, 2u64.pow(m.v2) * 3u64.pow(m.v3));
    }
}

#[test]
fn every_supported_packing_lies_in_the_tables() {
    for disc in SUPPORTED {
        let k = d(disc);
        let m = conjecture_modulus(&k).m.lcm(&6);
        for kind in [PackingKind::Strip, PackingKind::Bounded] {
            let r = packing_census(k, kind, m, 150, kind == PackingKind::Strip && disc == -15).unwrap();
            assert!(table_membership(&k, m, &r.observed).unwrap(), "Δ = {disc} {}: {:?}", kind.name(), r.observed);
        }
    }
}

#[test]
fn residues_are_stable_under_doubling() {
    for disc in [-4, -8, -7, -20] {
        let s = saturation_check(d(disc), PackingKind::Bounded, 24, 150).unwrap();
        assert!(s.stable(), "Δ = {disc}");
    }
}

#[test]
fn unobstructed_primes_see_every_class() {
    let p = fundamental_packing(d(-4), PackingKind::Bounded, 1000).unwrap();
    for q in [5u64, 7, 11] {
        let r = residue_census(&p.circles, q, &p.id, 1000).unwrap();
        assert_eq!(r.observed.len() as u64, q, "mod {q}");
    }
}

#[test]
fn modulus_one_and_bad_moduli() {
    let p = fundamental_packing(d(-7), PackingKind::Bounded, 30).unwrap();
    let r = residue_census(&p.circles, 1, &p.id, 30).unwrap();
    assert_eq!(r.observed, set(&[0]));
    assert_eq!(r.counts.iter().sum::<u64>() as usize, p.circles.len());
    assert_eq!(residue_census(&p.circles, 0, &p.id, 30), Err(CurvlabError::BadModulus));
    assert_eq!(table_membership(&d(-7), 0, &set(&[0])), Err(CurvlabError::BadModulus));
    assert!(matches!(table_membership(&d(-8), 2, &set(&[0])), Err(CurvlabError::Unresolved { need: 4, .. })));
    assert_eq!(project(&set(&[0, 5, 7, 22]), 24, 3), set(&[0, 1, 2]));
}

#[test]
fn packings_are_primitive() {
    for disc in SUPPORTED {
        let p = fundamental_packing(d(disc), PackingKind::Bounded, 60).unwrap();
        let pr = primitivity(&p.circles, 200).unwrap();
        assert_eq!(pr.gcd, BigInt::from(1), "Δ = {disc}");
        assert!(pr.pairs_checked > 0);
        assert_eq!(pr.identity_failures, 0, "Δ = {disc}");
    }
}

#[test]
fn even_sublist_has_gcd_two() {
    let p = fundamental_packing(d(-4), PackingKind::Bounded, 60).unwrap();
    let even: Vec<_> = p.circles.iter().filter(|c| c.n.is_even()).cloned().collect();
    assert_eq!(primitivity(&even, 50).unwrap().gcd, BigInt::from(2));
    assert_eq!(primitivity(&even[..1], 50), Err(CurvlabError::TooFewCircles(1)));
}

#[test]
fn circle_at_zero_has_unit_curvature() {
    let k = d(-7);
    let p = fundamental_packing(k, PackingKind::Strip, 20).unwrap();
    let zero = p.circles.iter().find(|c| c.n.is_positive() && c.contains_point(&KPoint::rational(0, 1))).unwrap();
    // 0 + 1 = N(1)
    assert_eq!(zero.n, denominator_norm(&k, &KPoint::rational(0, 1)));
    assert_eq!(denominator_norm(&k, &KPoint::Infinity), BigInt::from(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn denominator_norm_of_a_over_b(di in 0usize..9, a in (-6i64..7, -6i64..7), b in (-6i64..7, -6i64..7)) {
        let delta = common::DISCS[di];
        let k = d(delta);
        prop_assume!(b != (0, 0));
        // keep pairs generating the unit ideal
        let coprime = common::brute_bezout(delta, a, b, 12).is_some();
        prop_assume!(coprime);
        let z = KNum::from_ints(a.0, a.1).div(&k, &KNum::from_ints(b.0, b.1)).unwrap();
        prop_assert_eq!(denominator_norm(&k, &KPoint::Finite(z)), BigInt::from(common::norm(delta, b)));
    }

    #[test]
    fn projection_commutes_with_census(m in 1u64..30, f in 1u64..5) {
        let p = fundamental_packing(d(-8), PackingKind::Bounded, 40).unwrap();
        let big = residue_census(&p.circles, m * f, &p.id, 40).unwrap();
        let small = residue_census(&p.circles, m, &p.id, 40).unwrap();
        prop_assert_eq!(project(&big.observed, m * f, m), small.observed);
    }
}
