mod common;

use std::collections::BTreeSet;

use kapollo::arrangement::{
    build_graph, circles_meet, cycle_check, enumerate_arrangement, ghost_chain, immediate_tangent, ArrangementQuery,
    GraphFlavor,
};
use kapollo::circle::OrientedCircle;
use kapollo::geom::Window;
use kapollo::groups::{prong, Superbasis};
use kapollo::qint::{rat, Disc, KNum, KPoint};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

fn d(x: i64) -> Disc {
    Disc::new(x).unwrap()
}

fn nonneg(c: &[OrientedCircle]) -> Vec<OrientedCircle> {
    c.iter().filter(|c| !c.n.is_negative()).cloned().collect()
}

/// Brute-force enumeration of the circles of curvature ≤ b meeting the unit
/// square over M(R̂), M running over products of short generator words.
fn orbit_circles(k: Disc, b: i64) -> BTreeSet<OrientedCircle> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![kapollo::circle::MobiusMap::identity(k)];
    let mut seen = BTreeSet::new();
    for _ in 0..7 {
        let mut next = Vec::new();
        for m in &frontier {
            for w in 0..5u8 {
                let g = m.compose(&common::mobius_word(k, &[w]));
                let c = g.circle().without_witness();
                if c.n.abs() <= BigInt::from(b) && seen.insert(g.clone()) {
                    out.insert(c);
                    next.push(g);
                }
            }
        }
        frontier = next;
    }
    out
}

#[test]
fn enumerated_circles_are_sound() {
    for disc in [-4, -8, -7, -11, -15, -20] {
        let k = d(disc);
        let circles = enumerate_arrangement(&ArrangementQuery::fundamental(k, 10));
        assert!(!circles.is_empty());
        let w = Window::fundamental(&k);
        for (i, c) in circles.iter().enumerate() {
            assert!(c.invariant_holds());
            assert!(c.n.abs() <= BigInt::from(10));
            assert!(w.meets(&k, c), "{c:?}");
            for o in &circles[i + 1..] {
                let p = o.pedoe2(c).abs();
                assert!(p >= BigInt::from(2) || c.same_set(o), "Δ={disc}: {c:?} {o:?} cross");
            }
        }
        // both orientations of each circle are listed
        let set: BTreeSet<_> = circles.iter().cloned().collect();
        assert!(circles.iter().all(|c| set.contains(&c.reversed())));
    }
}

#[test]
fn enumeration_contains_orbit_circles_in_window() {
    for disc in [-4, -7, -15] {
        let k = d(disc);
        let w = Window::fundamental(&k);
        let ours: BTreeSet<_> = enumerate_arrangement(&ArrangementQuery::fundamental(k, 6)).into_iter().collect();
        let brute = orbit_circles(k, 6);
        let mut checked = 0;
        for c in brute.iter().filter(|c| w.meets(&k, c)) {
            assert!(ours.contains(c), "Δ={disc}: missing {c:?}");
            checked += 1;
        }
        assert!(checked > 10);
    }
}

#[test]
fn saturation_small_bound() {
    for disc in [-4, -8, -7, -11, -15] {
        let k = d(disc);
        let small = enumerate_arrangement(&ArrangementQuery::fundamental(k, 8));
        let big = enumerate_arrangement(&ArrangementQuery::fundamental(k, 16));
        let cut: Vec<_> = big.into_iter().filter(|c| c.n.abs() <= BigInt::from(8)).collect();
        assert_eq!(small, cut, "Δ = {disc}");
    }
}

#[test]
fn zero_bound_gives_lines_only() {
    let k = d(-7);
    let c = enumerate_arrangement(&ArrangementQuery::fundamental(k, 0));
    assert!(!c.is_empty());
    assert!(c.iter().all(|c| c.n.is_zero()));
    assert!(c.contains(&OrientedCircle::real_line(k)));
}

#[test]
fn immediate_graph_is_a_forest_for_non_euclidean_fields() {
    for disc in [-15, -19, -20, -23, -24] {
        let k = d(disc);
        let circles = nonneg(&enumerate_arrangement(&ArrangementQuery::fundamental(k, 10)));
        let g = build_graph(&circles, GraphFlavor::ImmediateOnly);
        assert!(!g.edges.is_empty());
        assert!(cycle_check(&g).is_empty(), "Δ = {disc}");
    }
}

#[test]
fn descartes_arrangement_has_loops() {
    let k = d(-4);
    let circles = nonneg(&enumerate_arrangement(&ArrangementQuery::fundamental(k, 10)));
    let g = build_graph(&circles, GraphFlavor::ImmediateOnly);
    let cycles = cycle_check(&g);
    assert!(!cycles.is_empty());
    for cyc in &cycles {
        assert!(cyc.len() >= 3);
    }
}

#[test]
fn immediate_edges_are_immediate_tangents() {
    let k = d(-7);
    let circles = nonneg(&enumerate_arrangement(&ArrangementQuery::fundamental(k, 6)));
    let g = build_graph(&circles, GraphFlavor::ImmediateOnly);
    let all = build_graph(&circles, GraphFlavor::AllTangencies);
    assert!(g.edges.len() <= all.edges.len());
    for (a, b, x) in &g.edges {
        let (ca, cb) = (&g.vertices[*a], &g.vertices[*b]);
        assert_eq!(ca.pedoe2(cb).abs(), BigInt::from(2));
        assert_eq!(ca.tangency_point(cb).unwrap(), *x);
    }
}

#[test]
fn base_prong_graph_is_a_star() {
    for disc in common::DISCS {
        let k = d(disc);
        let p = prong(k, &Superbasis::base());
        assert_eq!(p.len(), 4);
        let g = build_graph(&p, GraphFlavor::ImmediateOnly);
        assert_eq!(g.degree(0), 3);
        if disc == -4 {
            // a Descartes quadruple: the leaves touch each other too
            assert_eq!(g.edges.len(), 6);
        } else {
            assert_eq!(g.edges.len(), 3, "Δ = {disc}");
        }
        let leaves: BTreeSet<_> = p[1..].iter().map(|c| c.without_witness()).collect();
        let tangents: BTreeSet<_> = [KPoint::rational(0, 1), KPoint::rational(1, 1), KPoint::Infinity]
            .iter()
            .map(|x| immediate_tangent(&p[0], x).unwrap().without_witness())
            .collect();
        assert_eq!(tangents, leaves, "Δ = {disc}");
    }
}

#[test]
fn ghosts_separate_the_arrangement() {
    let k = d(-15);
    let chain = ghost_chain(&k, 2).unwrap();
    assert_eq!(chain[0].tangency_point(&chain[1]).unwrap(), KPoint::Finite(KNum::new(rat(0, 1), rat(1, 2))));
    let g = &chain[0];
    assert_eq!(g.n.to_i64(), Some(1));
    let circles = enumerate_arrangement(&ArrangementQuery::fundamental(k, 12));
    for gh in &chain {
        assert!(circles.iter().all(|c| !circles_meet(gh, c)));
    }
    // the ghost is not a Bianchi circle itself but satisfies the same datum
    assert!(g.invariant_holds());
    assert!(ghost_chain(&d(-19), 1).is_err());
}
