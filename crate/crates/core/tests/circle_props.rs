mod common;

use kapollo::arrangement::immediate_tangent;
use kapollo::circle::{rho, MobiusMap, OrientedCircle};
use kapollo::qint::{Disc, KPoint};
use num_bigint::BigInt;
use proptest::prelude::*;

fn disc_strategy() -> impl Strategy<Value = Disc> {
    (0usize..common::DISCS.len()).prop_map(|i| Disc::new(common::DISCS[i]).unwrap())
}

fn word() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..5, 0..12)
}

fn map(k: Disc, w: &[u8]) -> MobiusMap {
    common::mobius_word(k, w)
}

#[test]
fn reduced_embedding_example() {
    // Δ = −8, (n, n′, w) = (1, 0, 1) embeds as (0, 2√2, 0, 1); w = τ would
    // violate the invariant since N(τ) = 2
    let k = Disc::new(-8).unwrap();
    assert!(OrientedCircle::from_ints(k, 1, 0, (0, 1)).is_err());
    let c = OrientedCircle::from_ints(k, 1, 0, (1, 0)).unwrap();
    let v = c.pedoe_embed();
    let f: Vec<f64> = v.0.iter().map(|x| x.to_f64()).collect();
    let r2 = 2f64.sqrt();
    let want = [0.0, 2.0 * r2, 0.0, 1.0];
    for (a, b) in f.iter().zip(want) {
        assert!((a - b).abs() < 1e-12, "{f:?}");
    }
    assert_eq!(v.dot(&v).as_rational(), Some(kapollo::qint::rat(1, 1)));
}

#[test]
fn bad_datum_rejected() {
    let k = Disc::new(-7).unwrap();
    assert!(OrientedCircle::from_ints(k, 1, 1, (1, 0)).is_err());
    assert!(OrientedCircle::from_ints(k, 0, 5, (1, 0)).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn images_of_the_real_line_are_bianchi_circles(k in disc_strategy(), w in word()) {
        let c = map(k, &w).circle();
        prop_assert!(c.invariant_holds());
        prop_assert_eq!(c.n == BigInt::from(0), c.is_line());
        let rev = c.reversed();
        prop_assert!(rev.same_set(&c));
        prop_assert_eq!(rev.pedoe_embed(), c.pedoe_embed().neg());
        prop_assert_eq!(c.pedoe_embed().dot(&c.pedoe_embed()).as_rational(), Some(kapollo::qint::rat(1, 1)));
    }

    #[test]
    fn apply_moves_points_onto_the_image(k in disc_strategy(), w in word(), g in word()) {
        let c = map(k, &w).circle();
        let g = map(k, &g);
        let image = c.apply(&g);
        for z in c.sample_points() {
            prop_assert!(image.contains_point(&g.apply_point(&z)));
        }
    }

    #[test]
    fn action_is_compatible_with_composition(k in disc_strategy(), w in word(), g in word(), h in word()) {
        let c = map(k, &w).circle();
        let (g, h) = (map(k, &g), map(k, &h));
        prop_assert_eq!(c.apply(&g.compose(&h)), c.apply(&h).apply(&g));
        prop_assert_eq!(c.apply(&g).apply(&g.inverse()), c);
    }

    #[test]
    fn pedoe_embedding_is_equivariant(k in disc_strategy(), w in word(), g in word()) {
        let c = map(k, &w).circle();
        let g = map(k, &g);
        prop_assert_eq!(c.apply(&g).pedoe_embed(), rho(&g).mul_vec(&c.pedoe_embed()));
        prop_assert!(rho(&g).in_o_m());
    }

    #[test]
    fn rho_is_a_homomorphism(k in disc_strategy(), g in word(), h in word()) {
        let (g, h) = (map(k, &g), map(k, &h));
        prop_assert_eq!(rho(&g.compose(&h)), rho(&g).mul(&rho(&h)));
    }

    #[test]
    fn pedoe_product_is_invariant(k in disc_strategy(), a in word(), b in word(), g in word()) {
        let (x, y) = (map(k, &a).circle(), map(k, &b).circle());
        let g = map(k, &g);
        prop_assert_eq!(x.apply(&g).pedoe2(&y.apply(&g)), x.pedoe2(&y));
        let dot = x.pedoe_embed().dot(&y.pedoe_embed()).as_rational().unwrap();
        prop_assert_eq!(dot, x.pedoe_product(&y));
    }

    #[test]
    fn rvec_roundtrip(k in disc_strategy(), w in word()) {
        let c = map(k, &w).circle();
        prop_assert_eq!(OrientedCircle::from_rvec(k, &c.rvec()).unwrap(), c);
    }

    #[test]
    fn immediate_tangency_is_an_involution(k in disc_strategy(), w in word(), p in -9i64..10, q in 1i64..10) {
        let g = map(k, &w);
        let c = g.circle();
        let x = g.apply_point(&if p == 9 { KPoint::Infinity } else { KPoint::rational(p, q) });
        let t = immediate_tangent(&c, &x).unwrap();
        prop_assert_eq!(t.pedoe2(&c), BigInt::from(-2));
        prop_assert_eq!(t.tangency_point(&c).unwrap(), x.clone());
        prop_assert_eq!(immediate_tangent(&t, &x).unwrap(), c);
    }
}
