//! Oriented K-Bianchi circles: Möbius images of R̂, the Pedoe product and
//! immediate tangency.

use kapollo::arrangement::immediate_tangent;
use kapollo::circle::{MobiusMap, OrientedCircle};
use kapollo::qint::{Disc, KPoint};

fn main() {
    let k = Disc::new(-4).unwrap();
    let r = OrientedCircle::real_line(k);
    // z ↦ 1/(z + τ) sends R̂ to a circle of reduced curvature 1
    let j = MobiusMap::from_coords(k, [[(0, 0), (1, 0)], [(1, 0), (0, 1)]], false).unwrap();
    let c = r.apply(&j);
    println!("R̂ = {r}, J(R̂) = {c}, centre {}", c.center().unwrap());
    println!("invariant n·n′·|Δ| = N(w) − 1: {}", c.invariant_holds());

    let t0 = immediate_tangent(&r, &KPoint::rational(0, 1)).unwrap();
    let t1 = immediate_tangent(&r, &KPoint::rational(1, 1)).unwrap();
    println!("immediate tangents of R̂ at 0 and 1: {t0}, {t1}");
    println!("⟨R̂, T0⟩ = {}", r.pedoe_product(&t0));
    println!("⟨T0, T1⟩ = {}", t0.pedoe_product(&t1));
    println!("T0 ∩ T1 at {}", t0.tangency_point(&t1).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string()));
}
