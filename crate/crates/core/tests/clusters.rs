mod common;

use std::collections::BTreeSet;

use kapollo::circle::{MinkMat, RVec};
use kapollo::clusters::{
    belt, belts, cube_base, cube_swap, curvatures, descartes_base, descartes_check, descartes_representations,
    general_base, k_descartes_check, kcluster_swap, tent11_base, tent7_base, tent_swap_11, tent_swap_7, Cluster,
    ClusterError, ClusterSpaceSpec,
};
use kapollo::packing::{generate_packing, PackingKind, PackingOptions, PackingSource};
use kapollo::qint::{rat, Disc, ExtRat};
use num_bigint::BigInt;
use proptest::prelude::*;

fn d(x: i64) -> Disc {
    Disc::new(x).unwrap()
}

fn key(c: &Cluster, spec: &ClusterSpaceSpec) -> BTreeSet<RVec> {
    c.unordered_key(spec).unwrap().into_iter().collect()
}

/// Number of distinct unordered clusters reached by reduced swap words of
/// length ≤ depth, together with the count a free product of `k` involutions
/// would give.
fn swap_tree(
    base: &Cluster,
    spec: &ClusterSpaceSpec,
    k: usize,
    depth: usize,
    swap: impl Fn(&Cluster, usize) -> Cluster,
) -> (usize, usize) {
    let mut seen = BTreeSet::new();
    seen.insert(key(base, spec));
    let mut frontier = vec![(base.clone(), 0usize)];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (c, last) in &frontier {
            for g in 1..=k {
                if g == *last {
                    continue;
                }
                let s = swap(c, g);
                assert!(s.is_valid(spec));
                seen.insert(key(&s, spec));
                next.push((s, g));
            }
        }
        frontier = next;
    }
    let free = 1 + (0..depth).map(|i| k * (k - 1).pow(i as u32)).sum::<usize>();
    (seen.len(), free)
}

#[test]
fn cube_swaps_share_one_face() {
    let k = d(-8);
    let spec = ClusterSpaceSpec::cube(k);
    let base = cube_base(&k);
    let b = key(&base, &spec);
    assert_eq!(b.len(), 8);
    let mut images = BTreeSet::new();
    for face in 1..=6 {
        let s = cube_swap(&base, face).unwrap();
        assert!(s.is_valid(&spec));
        let ks = key(&s, &spec);
        assert_eq!(ks.intersection(&b).count(), 4, "face {face}");
        images.insert(ks);
        assert_eq!(cube_swap(&s, face).unwrap(), base);
    }
    assert_eq!(images.len(), 6);
    assert!(matches!(cube_swap(&base, 7), Err(ClusterError::BadIndex(7))));
}

#[test]
fn swap_graphs_are_trees_to_depth_four() {
    let k8 = d(-8);
    let (n, free) = swap_tree(&cube_base(&k8), &ClusterSpaceSpec::cube(k8), 6, 4, |c, g| cube_swap(c, g).unwrap());
    assert_eq!((n, free), (937, 937));
    let k7 = d(-7);
    let (n, free) =
        swap_tree(&tent7_base(&k7), &ClusterSpaceSpec::tent7(k7), 3, 4, |c, g| tent_swap_7(c, 2 * g - 1).unwrap());
    assert_eq!(n, free);
    let k11 = d(-11);
    let (n, free) =
        swap_tree(&tent11_base(&k11), &ClusterSpaceSpec::tent11(k11), 4, 4, |c, g| tent_swap_11(c, g).unwrap());
    assert_eq!(n, free);
}

#[test]
fn tent_swaps_keep_their_belt() {
    let k = d(-7);
    let spec = ClusterSpaceSpec::tent7(k);
    let t = tent7_base(&k);
    for peak in [1, 3, 5] {
        let s = tent_swap_7(&t, peak).unwrap();
        assert!(s.is_valid(&spec));
        let circles = s.circles(&spec).unwrap();
        for c in belt(&t, peak).unwrap() {
            assert!(circles.contains(&c));
        }
        assert_eq!(tent_swap_7(&s, peak).unwrap(), t);
    }
    let k = d(-11);
    let spec = ClusterSpaceSpec::tent11(k);
    let t = tent11_base(&k);
    let bs = belts(&t).unwrap();
    assert_eq!(bs.len(), 4);
    for (i, b) in bs.iter().enumerate() {
        assert_eq!(b.len(), 6);
        let s = tent_swap_11(&t, i + 1).unwrap();
        let circles = s.circles(&spec).unwrap();
        assert!(b.iter().all(|c| circles.contains(c)), "belt {}", i + 1);
        assert_eq!(tent_swap_11(&s, i + 1).unwrap(), t);
    }
}

#[test]
fn tent11_gram_is_golden() {
    // R has diagonal −11 and off-diagonal −33/2; gram4 is 4R
    let k = d(-11);
    let t = tent11_base(&k);
    let g = t.gram4();
    for (i, row) in g.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert_eq!(*x, BigInt::from(if i == j { -44 } else { -66 }));
        }
    }
    let r: Vec<Vec<_>> =
        (0..4).map(|i| (0..4).map(|j| if i == j { rat(-11, 1) } else { rat(-33, 2) }).collect()).collect();
    assert_eq!(t.mink().gram(), MinkMat::from_rational(11, &r));
}

#[test]
fn forty_eight_descartes_representations() {
    let k = d(-4);
    let spec = ClusterSpaceSpec::descartes(k);
    let base = descartes_base(&k);
    let reps = descartes_representations(&base);
    assert_eq!(reps.len(), 48);
    let distinct: BTreeSet<_> = reps.iter().map(|c| c.cols.clone()).collect();
    assert_eq!(distinct.len(), 48);
    for r in &reps {
        assert!(r.is_valid(&spec));
        let n = curvatures(r, &spec).unwrap();
        assert!(descartes_check(&n[0], &n[1], &n[2], &n[3]));
    }
    let orientations: BTreeSet<_> = reps.iter().map(|c| key(c, &spec)).collect();
    assert_eq!(orientations.len(), 2);
}

fn real_curvatures(c: &Cluster, spec: &ClusterSpaceSpec) -> Vec<ExtRat> {
    let r = spec.disc.abs();
    curvatures(c, spec).unwrap().into_iter().map(|n| ExtRat::surd(n.into(), r)).collect()
}

#[test]
fn k_descartes_on_packing_clusters() {
    for disc in common::DISCS {
        let k = d(disc);
        let spec = ClusterSpaceSpec::general(k);
        let base = general_base(&k);
        let x = real_curvatures(&base, &spec);
        assert!(k_descartes_check(&k, &x[0], &x[1], &x[2], &x[3]), "Δ = {disc}");
        let mut c = base.clone();
        for g in [1, 2, 3, 4, 2, 1, 3, 4, 1] {
            c = kcluster_swap(&c, g).unwrap();
            let x = real_curvatures(&c, &spec);
            assert!(k_descartes_check(&k, &x[0], &x[1], &x[2], &x[3]), "Δ = {disc}");
        }
    }
}

#[test]
fn k_descartes_at_minus_four_is_classical() {
    let k = d(-4);
    let opts = PackingOptions { keep_clusters: true, ..PackingOptions::new(30) };
    let p = generate_packing(&PackingSource::fundamental(k, PackingKind::Bounded), &opts).unwrap();
    let spec = ClusterSpaceSpec::descartes(k);
    for c in p.clusters.iter().take(100) {
        let n = curvatures(c, &spec).unwrap();
        let x: Vec<ExtRat> = n.iter().map(|v| ExtRat::surd(v.clone().into(), 4)).collect();
        assert_eq!(k_descartes_check(&k, &x[0], &x[1], &x[2], &x[3]), descartes_check(&n[0], &n[1], &n[2], &n[3]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_swap_words_stay_valid(word in prop::collection::vec(1usize..=6, 0..10)) {
        let k = d(-8);
        let spec = ClusterSpaceSpec::cube(k);
        let mut c = cube_base(&k);
        for &f in &word {
            let s = cube_swap(&c, f).unwrap();
            prop_assert!(s.is_valid(&spec));
            prop_assert_eq!(cube_swap(&s, f).unwrap(), c.clone());
            c = s;
        }
        let n = curvatures(&c, &spec).unwrap();
        prop_assert_eq!(n.len(), 8);
    }

    #[test]
    fn general_swaps_are_involutions(di in 0usize..9, word in prop::collection::vec(1usize..=4, 0..8)) {
        let k = d(common::DISCS[di]);
        let spec = ClusterSpaceSpec::general(k);
        let mut c = general_base(&k);
        for &g in &word {
            let s = kcluster_swap(&c, g).unwrap();
            prop_assert!(s.is_valid(&spec));
            prop_assert_eq!(kcluster_swap(&s, g).unwrap(), c.clone());
            c = s;
        }
    }
}
