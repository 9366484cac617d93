//! Integers of Q(√−7): the basis {1, τ}, norms, units and Bézout pairs.

use kapollo::qint::{Disc, OKElem};

fn main() {
    let k = Disc::new(-7).expect("fundamental discriminant");
    let tau = k.tau();
    println!("{k}: τ² = {}, N(τ) = {}", k.mul(&tau, &tau), k.norm(&tau));
    println!("units: {:?}", k.units().iter().map(|u| u.to_string()).collect::<Vec<_>>());

    let alpha = OKElem::new(3, 1);
    let beta = OKElem::new(2, -1);
    match k.bezout(&alpha, &beta) {
        Some((g, d)) => {
            let det = k.mul(&alpha, &d) - k.mul(&beta, &g);
            println!("({alpha}, {beta}) coprime: α·{d} − β·{g} = {det}");
        }
        None => println!("({alpha}, {beta}) not coprime"),
    }

    let small = k.elements_up_to_norm(4);
    println!("{} elements of norm ≤ 4", small.len());
}
