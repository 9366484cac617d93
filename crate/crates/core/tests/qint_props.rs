mod common;

use kapollo::qint::{rat, Disc, DiscError, ExtRat, OKElem};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn pair(x: &OKElem) -> (i64, i64) {
    (x.u.to_i64().unwrap(), x.v.to_i64().unwrap())
}

fn disc_strategy() -> impl Strategy<Value = Disc> {
    (0usize..common::DISCS.len()).prop_map(|i| Disc::new(common::DISCS[i]).unwrap())
}

fn elem() -> impl Strategy<Value = OKElem> {
    (-300i64..300, -300i64..300).prop_map(|(u, v)| OKElem::new(u, v))
}

#[test]
fn rejects_bad_discriminants() {
    assert!(Disc::new(-3).is_err());
    for bad in [5, 0, -1, -2, -12, -16, -27, -9] {
        assert!(Disc::new(bad).is_err(), "{bad}");
    }
    for good in common::DISCS {
        assert_eq!(Disc::new(good).unwrap().delta(), good);
    }
    assert_eq!(Disc::new(-3), Err(DiscError::Minus3));
    assert_eq!(Disc::new(7), Err(DiscError::NotNegative(7)));
    assert_eq!(Disc::new(-12), Err(DiscError::NotFundamental(-12)));
}

#[test]
fn tau_squared() {
    for delta in common::DISCS {
        let k = Disc::new(delta).unwrap();
        let t = k.tau();
        assert_eq!(pair(&k.mul(&t, &t)), common::mul(delta, (0, 1), (0, 1)));
    }
}

#[test]
fn square_radicand_folds() {
    let x = ExtRat::new(rat(1, 1), rat(3, 1), 4);
    assert_eq!(x.as_rational(), Some(rat(7, 1)));
}

#[test]
fn bezout_agrees_with_brute_force() {
    for delta in [-4, -8, -7, -11, -15, -20] {
        let k = Disc::new(delta).unwrap();
        for a0 in -4..=4 {
            for a1 in -4..=4 {
                for b0 in -4..=4 {
                    for b1 in -4..=4 {
                        if (a0, a1, b0, b1) == (0, 0, 0, 0) {
                            continue;
                        }
                        let (a, b) = (OKElem::new(a0, a1), OKElem::new(b0, b1));
                        let ours = k.bezout(&a, &b);
                        if let Some((g, dd)) = &ours {
                            let lhs = k.mul(&a, dd) - k.mul(&b, g);
                            assert_eq!(lhs, k.one(), "Δ={delta} α={a} β={b}");
                        }
                        if common::brute_bezout(delta, (a0, a1), (b0, b1), 10).is_some() {
                            assert!(ours.is_some(), "Δ={delta} α={a} β={b}");
                        }
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn multiplication_matches_oracle(k in disc_strategy(), x in elem(), y in elem()) {
        prop_assert_eq!(pair(&k.mul(&x, &y)), common::mul(k.delta(), pair(&x), pair(&y)));
        prop_assert_eq!(pair(&k.conj(&x)), common::conj(k.delta(), pair(&x)));
    }

    #[test]
    fn norm_is_multiplicative(k in disc_strategy(), x in elem(), y in elem()) {
        prop_assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
        prop_assert!(k.norm(&x) >= BigInt::from(0));
        prop_assert_eq!(k.norm(&x) == BigInt::from(0), x.is_zero());
    }

    #[test]
    fn conjugation_is_a_ring_involution(k in disc_strategy(), x in elem(), y in elem()) {
        prop_assert_eq!(k.conj(&k.conj(&x)), x.clone());
        prop_assert_eq!(k.conj(&k.mul(&x, &y)), k.mul(&k.conj(&x), &k.conj(&y)));
        prop_assert_eq!(k.conj(&(x.clone() + y.clone())), k.conj(&x) + k.conj(&y));
        prop_assert_eq!(k.mul(&x, &k.conj(&x)), OKElem::from_big(k.norm(&x), BigInt::from(0)));
    }

    #[test]
    fn exact_division_inverts_multiplication(k in disc_strategy(), x in elem(), y in elem()) {
        prop_assume!(!y.is_zero());
        prop_assert_eq!(k.div_exact(&k.mul(&x, &y), &y), Some(x));
    }

    #[test]
    fn bezout_identity(k in disc_strategy(), a in elem(), b in elem()) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        if let Some((g, dd)) = k.bezout(&a, &b) {
            prop_assert_eq!(k.mul(&a, &dd) - k.mul(&b, &g), k.one());
        }
        let na = k.norm(&a);
        let nb = k.norm(&b);
        if num_integer::Integer::gcd(&na, &nb) == BigInt::from(1) {
            prop_assert!(k.bezout(&a, &b).is_some());
        }
    }

    #[test]
    fn ext_rat_conjugate_product(k in disc_strategy(), p in -1000i64..1000, q in -1000i64..1000, s in 1i64..50) {
        // |Δ| = 4 is a square and folds into the rational part
        prop_assume!(k.delta() != -4);
        let x = ExtRat::new(rat(p, s), rat(q, s), k.abs());
        let prod = x.clone() * x.conj();
        let expect = rat(p * p - q * q * k.abs(), s * s);
        prop_assert_eq!(prod.as_rational(), Some(expect.clone()));
        prop_assert_eq!(x.field_norm(), expect);
        if !x.is_zero() {
            prop_assert_eq!((x.clone() * x.inv().unwrap()).as_rational(), Some(rat(1, 1)));
        }
    }
}
