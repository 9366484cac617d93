//! Clusters: the Descartes quadruple of Q(i), swaps of the Q(√−2) cube and
//! the Q(√−7) tent, and the Gram check WᵀG_MW = R.

use kapollo::clusters::{self, ClusterSpaceSpec};
use kapollo::qint::Disc;

fn main() {
    let k = Disc::new(-4).unwrap();
    let spec = ClusterSpaceSpec::descartes(k);
    let base = clusters::descartes_base(&k);
    let curv = clusters::curvatures(&base, &spec).unwrap();
    println!(
        "Q(i) base quadruple curvatures {curv:?}, Descartes: {}",
        clusters::descartes_check(&curv[0], &curv[1], &curv[2], &curv[3])
    );
    let swapped = clusters::kcluster_swap(&base, 3).unwrap();
    println!("after the fourth swap: {:?}", clusters::curvatures(&swapped, &spec).unwrap());
    println!(
        "{} orderings and orientations of the same configuration",
        clusters::descartes_representations(&base).len()
    );

    let k8 = Disc::new(-8).unwrap();
    let cube = clusters::cube_base(&k8);
    let spec8 = ClusterSpaceSpec::cube(k8);
    println!("Q(√−2) cube curvatures {:?}", clusters::curvatures(&cube, &spec8).unwrap());
    for face in 1..=6 {
        let c = clusters::cube_swap(&cube, face).unwrap();
        println!("  face {face} swapped: {:?}", clusters::curvatures(&c, &spec8).unwrap());
    }

    let k7 = Disc::new(-7).unwrap();
    let tent = clusters::tent7_base(&k7);
    for peak in [1, 3, 5] {
        let t = clusters::tent_swap_7(&tent, peak).unwrap();
        println!("Q(√−7) tent, peak {peak} swapped: valid = {}", t.is_valid(&ClusterSpaceSpec::tent7(k7)));
    }
}
